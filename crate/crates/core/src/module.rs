//! Finite modules over a finite ring or over the integers.
//!
//! A module is materialised as an addition table over its carrier plus an
//! action table indexed by the elements of its [`Scalars`] view. Integer
//! scalars act through reduction modulo the module exponent, computed once
//! at construction.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::Analysis;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::{gcd, quotient_ring, Ideal, Scalars};
use crate::lattice::Tables;
use crate::ring::{cosets, MixedRadix, Ring};
use crate::Limits;

/// Work budget (scalar-element operations) under which the action laws are
/// checked on every combination; larger modules are sampled.
const FULL_ACTION_CHECK: usize = 1 << 24;
const SAMPLED_ACTION_CHECKS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    /// The ring acting on itself.
    Regular,
    /// `Z_n` with scalars acting by repeated addition.
    Znz(u64),
    Product(Vec<ModuleSpec>),
    /// Quotient of a module by the submodule generated by the given elements.
    Quotient {
        base: Box<ModuleSpec>,
        generators: Vec<String>,
    },
}

impl ModuleSpec {
    pub fn name(&self, ring: &str) -> String {
        match self {
            ModuleSpec::Regular => ring.to_string(),
            ModuleSpec::Znz(n) => format!("Z_{n}"),
            ModuleSpec::Product(parts) => {
                let names: Vec<String> = parts
                    .iter()
                    .map(|p| match p {
                        ModuleSpec::Product(_) | ModuleSpec::Quotient { .. } => {
                            format!("({})", p.name(ring))
                        }
                        _ => p.name(ring),
                    })
                    .collect();
                if names.len() > 1 && names.iter().all(|n| *n == names[0]) {
                    format!("{}^{}", names[0], names.len())
                } else {
                    names.join("x")
                }
            }
            ModuleSpec::Quotient { base, generators } => {
                format!("{}/<{}>", base.name(ring), generators.join(","))
            }
        }
    }

    fn cardinality(&self, ring: &Ring) -> Option<u128> {
        match self {
            ModuleSpec::Regular => ring.finite().map(|r| r.size() as u128),
            ModuleSpec::Znz(n) => Some(*n as u128),
            ModuleSpec::Product(parts) => parts.iter().try_fold(1u128, |acc, p| {
                p.cardinality(ring).map(|c| acc.saturating_mul(c))
            }),
            ModuleSpec::Quotient { base, .. } => base.cardinality(ring),
        }
    }
}

/// A submodule: its canonical element set and an irredundant generating set.
/// Equality and ordering use the elements only.
#[derive(Clone, Debug)]
pub struct Submodule {
    set: ElemSet,
    generators: Vec<u32>,
}

impl Submodule {
    pub fn elements(&self) -> &ElemSet {
        &self.set
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: u32) -> bool {
        self.set.contains(m)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.set.hash(state);
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.set.cmp(&other.set)
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Module {
    ring: Ring,
    scalars: Arc<Scalars>,
    name: String,
    size: usize,
    add: Vec<u32>,
    act: Vec<u32>,
    labels: Vec<String>,
    lookup: HashMap<String, u32>,
    exponent: Option<u64>,
    limits: Limits,
    submodules: OnceLock<Result<Arc<Vec<Submodule>>>>,
    pub(crate) analysis: OnceLock<Result<Arc<Analysis>>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module")
            .field("name", &self.name)
            .field("ring", &self.ring.name())
            .field("size", &self.size)
            .finish()
    }
}

/// Carrier and operations before the scalar view is attached.
struct Raw {
    name: String,
    labels: Vec<String>,
    add: Vec<u32>,
    /// Action indexed by ring elements; `None` for integer scalars, where it
    /// is derived from the addition.
    act: Option<Vec<u32>>,
}

pub fn build_module(ring: &Ring, spec: &ModuleSpec, limits: &Limits) -> Result<Module> {
    if let ModuleSpec::Quotient { base, generators } = spec {
        let base = build_module(ring, base, limits)?;
        let gens = generators
            .iter()
            .map(|g| base.parse_element(g))
            .collect::<Result<Vec<_>>>()?;
        let k = base.span(gens);
        return Ok(quotient_module(&base, &k)?.target);
    }
    let size = spec.cardinality(ring).ok_or_else(|| {
        Error::Unsupported("the regular module of Z is infinite; use znz".into())
    })?;
    if size > limits.max_elements as u128 {
        return Err(Error::CapExceeded {
            what: "module carrier",
            size,
            cap: limits.max_elements,
        });
    }
    let raw = raw_module(ring, spec, limits)?;
    Module::finish(ring.clone(), raw, *limits)
}

fn raw_module(ring: &Ring, spec: &ModuleSpec, limits: &Limits) -> Result<Raw> {
    match spec {
        ModuleSpec::Regular => {
            let r = ring.finite().ok_or_else(|| {
                Error::Unsupported("the regular module of Z is infinite; use znz".into())
            })?;
            Ok(Raw {
                name: ring.name(),
                labels: r.labels().to_vec(),
                add: r.add_table().to_vec(),
                act: Some(r.mul_table().to_vec()),
            })
        }
        ModuleSpec::Znz(n) => {
            if *n == 0 {
                return Err(Error::Unsupported("znz 0 is Z itself, which is infinite".into()));
            }
            if *n < 2 {
                return Err(Error::ZeroModule);
            }
            let n32 = *n as u32;
            let add = (0..n32)
                .flat_map(|a| (0..n32).map(move |b| (a + b) % n32))
                .collect();
            let act = match ring {
                Ring::Integers => None,
                Ring::Finite(r) => {
                    // Z_n is a module over a cyclic ring Z_m when n divides m.
                    let cyclic = r.additive_order(r.one()) as usize == r.size();
                    if !cyclic || r.size() as u64 % n != 0 {
                        return Err(Error::Unsupported(format!(
                            "Z_{n} is not a module over {}",
                            r.name()
                        )));
                    }
                    let mut value = vec![0u64; r.size()];
                    let mut x = 0;
                    for k in 0..r.size() as u64 {
                        value[x as usize] = k;
                        x = r.add(x, r.one());
                    }
                    let mut act = vec![0u32; r.size() * n32 as usize];
                    for s in 0..r.size() {
                        for m in 0..*n {
                            act[s * n32 as usize + m as usize] = ((value[s] * m) % n) as u32;
                        }
                    }
                    Some(act)
                }
            };
            Ok(Raw {
                name: spec.name(&ring.name()),
                labels: (0..n32).map(|k| k.to_string()).collect(),
                add,
                act,
            })
        }
        ModuleSpec::Product(parts) => {
            if parts.is_empty() {
                return Err(Error::ZeroModule);
            }
            let raws = parts
                .iter()
                .map(|p| raw_module(ring, p, limits))
                .collect::<Result<Vec<_>>>()?;
            let radix = MixedRadix::new(raws.iter().map(|r| r.labels.len() as u32).collect());
            let size = radix.size();
            let labels = (0..size as u32)
                .map(|i| {
                    let d = radix.decode(i);
                    let inner: Vec<&str> = d
                        .iter()
                        .zip(&raws)
                        .map(|(&x, r)| r.labels[x as usize].as_str())
                        .collect();
                    format!("({})", inner.join(","))
                })
                .collect();
            let decoded: Vec<Vec<u32>> = (0..size as u32).map(|i| radix.decode(i)).collect();
            let mut add = vec![0u32; size * size];
            for a in 0..size {
                for b in 0..size {
                    let out: Vec<u32> = raws
                        .iter()
                        .enumerate()
                        .map(|(k, r)| {
                            let n = r.labels.len();
                            r.add[decoded[a][k] as usize * n + decoded[b][k] as usize]
                        })
                        .collect();
                    add[a * size + b] = radix.encode(&out);
                }
            }
            let act = match ring {
                Ring::Integers => None,
                Ring::Finite(r) => {
                    let mut act = vec![0u32; r.size() * size];
                    for s in 0..r.size() {
                        for m in 0..size {
                            let out: Vec<u32> = raws
                                .iter()
                                .enumerate()
                                .map(|(k, raw)| {
                                    let n = raw.labels.len();
                                    raw.act.as_ref().expect("finite ring action")
                                        [s * n + decoded[m][k] as usize]
                                })
                                .collect();
                            act[s * size + m] = radix.encode(&out);
                        }
                    }
                    Some(act)
                }
            };
            Ok(Raw {
                name: spec.name(&ring.name()),
                labels,
                add,
                act,
            })
        }
        ModuleSpec::Quotient { .. } => {
            let m = build_module(ring, spec, limits)?;
            Ok(Raw {
                name: m.name.clone(),
                labels: m.labels.clone(),
                add: m.add.clone(),
                act: if ring.is_integers() { None } else { Some(m.act.clone()) },
            })
        }
    }
}

impl Module {
    fn finish(ring: Ring, raw: Raw, limits: Limits) -> Result<Module> {
        let size = raw.labels.len();
        if size < 2 {
            return Err(Error::ZeroModule);
        }
        if size > limits.max_elements {
            return Err(Error::CapExceeded {
                what: "module carrier",
                size: size as u128,
                cap: limits.max_elements,
            });
        }
        let (scalars, act, exponent) = match (&ring, raw.act) {
            (Ring::Finite(r), Some(act)) => (Scalars::of_ring(r.clone(), limits), act, None),
            (Ring::Integers, None) => {
                let order = |m: u32| {
                    let mut x = m;
                    let mut k = 1u64;
                    while x != 0 {
                        x = raw.add[x as usize * size + m as usize];
                        k += 1;
                    }
                    k
                };
                let e = (0..size as u32).fold(1u64, |acc, m| {
                    let o = order(m);
                    acc / gcd(acc, o) * o
                });
                let scalars = Scalars::integers_mod(e, limits)?;
                let mut act = vec![0u32; e as usize * size];
                for k in 1..e as usize {
                    for m in 0..size {
                        let prev = act[(k - 1) * size + m];
                        act[k * size + m] = raw.add[prev as usize * size + m];
                    }
                }
                (scalars, act, Some(e))
            }
            _ => unreachable!("action presence matches the ring kind"),
        };
        let lookup = raw
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let module = Module {
            ring,
            scalars: Arc::new(scalars),
            name: raw.name,
            size,
            add: raw.add,
            act,
            labels: raw.labels,
            lookup,
            exponent,
            limits,
            submodules: OnceLock::new(),
            analysis: OnceLock::new(),
        };
        module.verify_action()?;
        Ok(module)
    }

    fn verify_action(&self) -> Result<()> {
        let s = &self.scalars;
        let r = s.ring();
        let ns = s.size() as u32;
        let n = self.size as u32;
        let check = |a: u32, b: u32, m: u32, m2: u32| -> Result<()> {
            let fail = |law: &str| {
                Err(Error::ActionLaw(format!(
                    "{law} fails at ({}, {}, {}, {})",
                    s.label(a),
                    s.label(b),
                    self.label(m),
                    self.label(m2)
                )))
            };
            if self.act(a, self.add(m, m2)) != self.add(self.act(a, m), self.act(a, m2)) {
                return fail("r(m+m') = rm+rm'");
            }
            if self.act(r.add(a, b), m) != self.add(self.act(a, m), self.act(b, m)) {
                return fail("(r+r')m = rm+r'm");
            }
            if self.act(r.mul(a, b), m) != self.act(a, self.act(b, m)) {
                return fail("(rr')m = r(r'm)");
            }
            if self.act(r.one(), m) != m {
                return fail("1m = m");
            }
            Ok(())
        };
        let work = (ns as usize).pow(2) * n as usize + ns as usize * (n as usize).pow(2);
        if work <= FULL_ACTION_CHECK {
            for a in 0..ns {
                for m in 0..n {
                    for m2 in 0..n {
                        check(a, 0, m, m2)?;
                    }
                    for b in 0..ns {
                        check(a, b, m, 0)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_ACTION_CHECKS {
                check(
                    rng.gen_range(0..ns),
                    rng.gen_range(0..ns),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn scalars(&self) -> &Arc<Scalars> {
        &self.scalars
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `"<module> over <ring>"`.
    pub fn description(&self) -> String {
        format!("{} over {}", self.name, self.ring.name())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Least `n` with `n m = 0` for every `m`; integer scalars only.
    pub fn exponent(&self) -> Option<u64> {
        self.exponent
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    /// Action of the scalar with index `s` in [`Module::scalars`].
    #[inline]
    pub fn act(&self, s: u32, m: u32) -> u32 {
        self.act[s as usize * self.size + m as usize]
    }

    pub(crate) fn tables(&self) -> Tables<'_> {
        Tables {
            size: self.size,
            add: &self.add,
            act: &self.act,
        }
    }

    pub fn label(&self, m: u32) -> &str {
        &self.labels[m as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parse_element(&self, token: &str) -> Result<u32> {
        let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(&m) = self.lookup.get(&compact) {
            return Ok(m);
        }
        // Integers name residues when the carrier is numbered 0..n-1.
        if let Ok(k) = compact.parse::<i64>() {
            if self.labels.iter().enumerate().all(|(i, l)| *l == i.to_string()) {
                return Ok(k.rem_euclid(self.size as i64) as u32);
            }
        }
        Err(Error::UnknownElement(token.to_string()))
    }

    /// Whether the scalar ring has exactly one maximal ideal. The integers
    /// never do.
    pub fn ring_is_quasilocal(&self) -> Result<bool> {
        match self.ring {
            Ring::Integers => Ok(false),
            Ring::Finite(_) => Ok(self.scalars.maximal_ideals()?.len() == 1),
        }
    }

    fn wrap(&self, set: ElemSet) -> Submodule {
        let generators = self.tables().generators(&set);
        Submodule { set, generators }
    }

    pub fn submodule(&self, set: ElemSet) -> Result<Submodule> {
        if set.universe() != self.size || !self.tables().is_closed(&set) {
            return Err(Error::NotClosed);
        }
        Ok(self.wrap(set))
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule {
            set: ElemSet::from_elems(self.size, [0]),
            generators: Vec::new(),
        }
    }

    pub fn whole(&self) -> Submodule {
        self.wrap(ElemSet::full(self.size))
    }

    pub fn is_proper(&self, n: &Submodule) -> bool {
        n.len() < self.size
    }

    /// `Rm`, recorded with generator `m`.
    pub fn cyclic(&self, m: u32) -> Submodule {
        Submodule {
            set: self.tables().orbit(m),
            generators: if m == 0 { Vec::new() } else { vec![m] },
        }
    }

    pub fn span<I: IntoIterator<Item = u32>>(&self, gens: I) -> Submodule {
        self.wrap(self.tables().span(gens))
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        self.wrap(self.tables().sum(&a.set, &b.set))
    }

    pub fn intersection(&self, a: &Submodule, b: &Submodule) -> Submodule {
        self.wrap(a.set.intersection(&b.set))
    }

    /// `IM` for an ideal of the scalar view.
    pub fn ideal_times(&self, ideal: &ElemSet) -> Submodule {
        self.ideal_times_sub(ideal, &ElemSet::full(self.size))
    }

    /// `IK` for an ideal of the scalar view and a submodule given by its elements.
    pub fn ideal_times_sub(&self, ideal: &ElemSet, sub: &ElemSet) -> Submodule {
        let gens =
            ElemSet::from_elems(self.size, ideal.iter().flat_map(|s| sub.iter().map(move |m| self.act(s, m))));
        self.span(gens.iter())
    }

    /// All submodules in canonical order (cardinality, then elements),
    /// including `{0}` and the module itself.
    pub fn enumerate_submodules(&self) -> Result<Arc<Vec<Submodule>>> {
        self.submodules
            .get_or_init(|| {
                let sets = self.tables().enumerate(self.limits.max_lattice)?;
                Ok(Arc::new(sets.into_iter().map(|s| self.wrap(s)).collect()))
            })
            .clone()
    }

    pub fn proper_submodules(&self) -> Result<Vec<Submodule>> {
        Ok(self
            .enumerate_submodules()?
            .iter()
            .filter(|n| self.is_proper(n))
            .cloned()
            .collect())
    }

    pub fn submodule_label(&self, n: &Submodule) -> String {
        if n.generators.is_empty() {
            return "<0>".to_string();
        }
        let labels: Vec<&str> = n.generators.iter().map(|&g| self.label(g)).collect();
        format!("<{}>", labels.join(","))
    }

    /// `(N : K) = { r | rK ⊆ N }` in the scalar view.
    pub fn colon_set(&self, n: &ElemSet, k: &ElemSet) -> ElemSet {
        let s = &self.scalars;
        ElemSet::from_elems(
            s.size(),
            (0..s.size() as u32).filter(|&r| k.iter().all(|m| n.contains(self.act(r, m)))),
        )
    }

    /// `(N : M)` in the scalar view.
    pub fn residue_set(&self, n: &Submodule) -> ElemSet {
        self.colon_set(&n.set, &ElemSet::full(self.size))
    }

    /// The residue `(N : M)` as an ideal of the ring.
    pub fn residue(&self, n: &Submodule) -> Ideal {
        self.scalars.to_ideal(&self.residue_set(n))
    }

    pub fn residue_elt_set(&self, n: &Submodule, m: u32) -> ElemSet {
        self.colon_set(&n.set, &ElemSet::from_elems(self.size, [m]))
    }

    /// `(N : m) = { r | rm ∈ N }`.
    pub fn residue_elt(&self, n: &Submodule, m: u32) -> Ideal {
        self.scalars.to_ideal(&self.residue_elt_set(n, m))
    }

    pub fn annihilator_set(&self) -> ElemSet {
        self.residue_set(&self.zero_submodule())
    }

    pub fn annihilator(&self) -> Ideal {
        self.scalars.to_ideal(&self.annihilator_set())
    }

    /// `Ann(m) = { r | rm = 0 }`.
    pub fn annihilator_elt(&self, m: u32) -> Ideal {
        self.residue_elt(&self.zero_submodule(), m)
    }

    /// `Ann(M) = (0)`. Never true for integer scalars on a finite module.
    pub fn is_faithful(&self) -> bool {
        match self.ring {
            Ring::Integers => false,
            Ring::Finite(_) => self.annihilator_set().len() == 1,
        }
    }

    /// The same carrier viewed as a module over `R / Ann(M)`.
    pub fn restrict_to_quotient_ring(&self) -> Result<Module> {
        let ann = self.annihilator();
        let (ring, reps): (Ring, Vec<u32>) = match &self.ring {
            Ring::Integers => {
                let r = self.scalars.ring().clone();
                let reps = (0..r.size() as u32).collect();
                (Ring::Finite(r), reps)
            }
            Ring::Finite(_) => {
                let q = quotient_ring(&self.ring, &ann, &self.limits)?;
                let table = q.table().expect("finite source");
                let mut reps = vec![u32::MAX; q.ring.size()];
                for (x, &c) in table.iter().enumerate().rev() {
                    reps[c as usize] = x as u32;
                }
                (Ring::Finite(q.ring), reps)
            }
        };
        let act = reps
            .iter()
            .flat_map(|&r| (0..self.size as u32).map(move |m| self.act(r, m)))
            .collect();
        Module::finish(
            ring,
            Raw {
                name: self.name.clone(),
                labels: self.labels.clone(),
                add: self.add.clone(),
                act: Some(act),
            },
            self.limits,
        )
    }

    /// A non-zero submodule as a module in its own right, with the inclusion
    /// map (position `i` holds the ambient element).
    pub fn as_module(&self, l: &Submodule) -> Result<(Module, Vec<u32>)> {
        if l.len() < 2 {
            return Err(Error::ZeroModule);
        }
        let elems = l.set.as_slice().to_vec();
        let mut pos = vec![u32::MAX; self.size];
        for (i, &x) in elems.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let k = elems.len();
        let add = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .map(|(a, b)| pos[self.add(elems[a], elems[b]) as usize])
            .collect();
        let act = match &self.ring {
            Ring::Integers => None,
            Ring::Finite(r) => Some(
                (0..r.size() as u32)
                    .flat_map(|s| elems.iter().map(move |&x| (s, x)))
                    .map(|(s, x)| pos[self.act(s, x) as usize])
                    .collect(),
            ),
        };
        let m = Module::finish(
            self.ring.clone(),
            Raw {
                name: self.submodule_label(l),
                labels: elems.iter().map(|&x| self.labels[x as usize].clone()).collect(),
                add,
                act,
            },
            self.limits,
        )?;
        Ok((m, elems))
    }
}

/// The canonical surjection `M -> M/K`.
#[derive(Debug)]
pub struct QuotientMap {
    pub kernel: Submodule,
    pub target: Module,
    projection: Vec<u32>,
}

impl QuotientMap {
    pub fn project(&self, m: u32) -> u32 {
        self.projection[m as usize]
    }

    pub fn push(&self, n: &Submodule) -> Submodule {
        let set = ElemSet::from_elems(self.target.size, n.set.iter().map(|m| self.project(m)));
        self.target.wrap(set)
    }

    /// Preimage in the source. `source` must be the module the map was built from.
    pub fn pull(&self, source: &Module, n: &Submodule) -> Submodule {
        let set = ElemSet::from_elems(
            self.projection.len(),
            (0..self.projection.len() as u32).filter(|&m| n.contains(self.project(m))),
        );
        source.wrap(set)
    }
}

pub fn quotient_module(m: &Module, k: &Submodule) -> Result<QuotientMap> {
    if !m.is_proper(k) {
        return Err(Error::ZeroQuotient);
    }
    let (proj, reps) = cosets(m.size, &k.set, |a, b| m.add(a, b));
    let q = reps.len();
    let add = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .map(|(a, b)| proj[m.add(reps[a], reps[b]) as usize])
        .collect();
    let act = match &m.ring {
        Ring::Integers => None,
        Ring::Finite(r) => Some(
            (0..r.size() as u32)
                .flat_map(|s| reps.iter().map(move |&x| (s, x)))
                .map(|(s, x)| proj[m.act(s, x) as usize])
                .collect(),
        ),
    };
    let name = if k.len() == 1 {
        m.name.clone()
    } else {
        format!("{}/{}", m.name, m.submodule_label(k))
    };
    let target = Module::finish(
        m.ring.clone(),
        Raw {
            name,
            labels: reps.iter().map(|&r| m.labels[r as usize].clone()).collect(),
            add,
            act,
        },
        m.limits,
    )?;
    Ok(QuotientMap {
        kernel: k.clone(),
        target,
        projection: proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingSpec};

    fn ring(spec: RingSpec) -> Ring {
        build_ring(&spec, &Limits::default()).unwrap()
    }

    fn module(r: RingSpec, m: ModuleSpec) -> Module {
        build_module(&ring(r), &m, &Limits::default()).unwrap()
    }

    fn z30_over_z() -> Module {
        module(RingSpec::Integers, ModuleSpec::Znz(30))
    }

    fn z4_squared() -> Module {
        module(
            RingSpec::Zn(4),
            ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]),
        )
    }

    /// Independent oracle: every subset closed under + and the action.
    fn brute_force_submodules(m: &Module) -> usize {
        let n = m.size();
        assert!(n <= 16);
        (0u32..1 << n)
            .map(|mask| ElemSet::from_elems(n, (0..n as u32).filter(|&i| mask >> i & 1 == 1)))
            .filter(|s| m.tables().is_closed(s))
            .count()
    }

    #[test]
    fn construction_examples() {
        let m = module(RingSpec::Zn(30), ModuleSpec::Regular);
        assert_eq!(m.size(), 30);
        let z = z30_over_z();
        assert_eq!(z.size(), 30);
        assert_eq!(z.exponent(), Some(30));
        let sq = z4_squared();
        assert_eq!(sq.size(), 16);
        assert_eq!(sq.name(), "Z_4^2");
        assert_eq!(sq.description(), "Z_4^2 over Z_4");
    }

    #[test]
    fn exponent_is_lcm_of_orders() {
        let m = module(
            RingSpec::Integers,
            ModuleSpec::Product(vec![ModuleSpec::Znz(4), ModuleSpec::Znz(6)]),
        );
        assert_eq!(m.exponent(), Some(12));
    }

    #[test]
    fn construction_errors() {
        let l = Limits::default();
        assert_eq!(
            build_module(&Ring::Integers, &ModuleSpec::Znz(1), &l).unwrap_err(),
            Error::ZeroModule
        );
        assert!(matches!(
            build_module(&Ring::Integers, &ModuleSpec::Regular, &l),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            build_module(&ring(RingSpec::Zn(4)), &ModuleSpec::Znz(3), &l),
            Err(Error::Unsupported(_))
        ));
        let small = Limits {
            max_elements: 10,
            ..l
        };
        assert!(matches!(
            build_module(&Ring::Integers, &ModuleSpec::Znz(30), &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cyclic_submodules() {
        let z = z30_over_z();
        assert_eq!(z.cyclic(6).elements().as_slice(), &[0, 6, 12, 18, 24]);
        assert_eq!(z.cyclic(0).elements().as_slice(), &[0]);
        let sq = z4_squared();
        let m = sq.parse_element("(2,0)").unwrap();
        let c = sq.cyclic(m);
        let labels: Vec<&str> = c.elements().iter().map(|x| sq.label(x)).collect();
        assert_eq!(labels, vec!["(0,0)", "(2,0)"]);
    }

    #[test]
    fn lattice_counts_match_oracles() {
        assert_eq!(z30_over_z().enumerate_submodules().unwrap().len(), 8);
        let z2 = module(RingSpec::Zn(2), ModuleSpec::Regular);
        assert_eq!(z2.enumerate_submodules().unwrap().len(), 2);
        let sq = z4_squared();
        assert_eq!(sq.enumerate_submodules().unwrap().len(), 15);
        assert_eq!(brute_force_submodules(&sq), 15);
        let dual = module(
            RingSpec::PolyQuot {
                modulus: 2,
                coeffs: vec![0, 0, 1],
            },
            ModuleSpec::Product(vec![ModuleSpec::Regular, ModuleSpec::Regular]),
        );
        assert_eq!(
            dual.enumerate_submodules().unwrap().len(),
            brute_force_submodules(&dual)
        );
    }

    #[test]
    fn lattice_closed_under_meet_and_join() {
        for m in [z30_over_z(), z4_squared()] {
            let subs = m.enumerate_submodules().unwrap();
            assert_eq!(subs[0], m.zero_submodule());
            assert_eq!(*subs.last().unwrap(), m.whole());
            for a in subs.iter() {
                assert!(m.tables().is_closed(a.elements()));
                for b in subs.iter() {
                    assert!(subs.contains(&m.sum(a, b)));
                    assert!(subs.contains(&m.intersection(a, b)));
                }
            }
        }
    }

    #[test]
    fn residues() {
        let z = z30_over_z();
        let six = z.cyclic(6);
        assert_eq!(z.residue(&six), Ideal::Generated(6));
        assert_eq!(z.residue(&z.whole()), Ideal::Generated(1));
        assert_eq!(z.residue_elt(&six, 3), Ideal::Generated(2));
        assert_eq!(z.residue_elt(&six, 12), Ideal::Generated(1));
        let sq = z4_squared();
        let n = sq.cyclic(sq.parse_element("(2,0)").unwrap());
        assert_eq!(sq.residue(&n), Ideal::Elements(ElemSet::from_elems(4, [0])));
        let z4 = module(RingSpec::Zn(4), ModuleSpec::Regular);
        assert_eq!(
            z4.residue_elt(&z4.cyclic(2), 1),
            Ideal::Elements(ElemSet::from_elems(4, [0, 2]))
        );
    }

    #[test]
    fn residue_times_module_inside_submodule() {
        for m in [z30_over_z(), z4_squared()] {
            for n in m.enumerate_submodules().unwrap().iter() {
                assert!(m.ideal_times(&m.residue_set(n)).is_subset(n));
            }
            assert_eq!(m.residue_set(&m.zero_submodule()), m.annihilator_set());
        }
    }

    #[test]
    fn annihilators() {
        let z = z30_over_z();
        assert_eq!(z.annihilator(), Ideal::Generated(30));
        assert!(!z.is_faithful());
        assert_eq!(z.annihilator_elt(1), Ideal::Generated(30));
        assert_eq!(z.annihilator_elt(6), Ideal::Generated(5));
        let r = module(RingSpec::Zn(30), ModuleSpec::Regular);
        assert_eq!(r.annihilator(), Ideal::Elements(ElemSet::from_elems(30, [0])));
        assert!(r.is_faithful());
    }

    #[test]
    fn quotient_maps() {
        let z = z30_over_z();
        let ten = z.cyclic(10);
        let f = quotient_module(&z, &ten).unwrap();
        assert_eq!(f.target.size(), 10);
        assert_eq!(f.kernel.len(), 3);
        assert_eq!(f.pull(&z, &f.target.zero_submodule()), ten);
        assert_eq!(f.push(&z.cyclic(2)).len(), 5);
        assert_eq!(f.pull(&z, &f.push(&z.cyclic(6))), z.cyclic(2));
        let same = quotient_module(&z, &z.zero_submodule()).unwrap();
        assert_eq!(same.target.size(), 30);
        assert_eq!(
            quotient_module(&z, &z.whole()).unwrap_err(),
            Error::ZeroQuotient
        );
    }

    #[test]
    fn pull_push_round_trip_when_kernel_contained() {
        for m in [z30_over_z(), z4_squared()] {
            let subs = m.enumerate_submodules().unwrap();
            for k in subs.iter().filter(|k| m.is_proper(k)) {
                let f = quotient_module(&m, k).unwrap();
                for n in subs.iter() {
                    let back = f.pull(&m, &f.push(n));
                    assert_eq!(back, m.sum(n, k));
                    if k.is_subset(n) {
                        assert_eq!(&back, n);
                    }
                }
                // Surjective, and the kernel is exactly K.
                let image: std::collections::HashSet<u32> =
                    (0..m.size() as u32).map(|x| f.project(x)).collect();
                assert_eq!(image.len(), f.target.size());
                assert_eq!(f.pull(&m, &f.target.zero_submodule()), *k);
            }
        }
    }

    #[test]
    fn quotient_spec_builds_coset_module() {
        let m = build_module(
            &Ring::Integers,
            &ModuleSpec::Quotient {
                base: Box::new(ModuleSpec::Znz(30)),
                generators: vec!["10".into()],
            },
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(m.size(), 10);
        assert_eq!(m.exponent(), Some(10));
    }

    #[test]
    fn restriction_to_quotient_ring() {
        let z = z30_over_z();
        let r = z.restrict_to_quotient_ring().unwrap();
        assert_eq!(r.ring().name(), "Z_30");
        assert!(r.is_faithful());
        let reg = module(RingSpec::Zn(30), ModuleSpec::Regular);
        for s in 0..30 {
            for m in 0..30 {
                assert_eq!(r.act(s, m), reg.act(s, m));
            }
        }
        let sq = z4_squared();
        let same = sq.restrict_to_quotient_ring().unwrap();
        assert_eq!(same.ring().name(), "Z_4");
        assert_eq!(same.act, sq.act);
    }

    #[test]
    fn submodule_as_module() {
        let z = z30_over_z();
        let (six, incl) = z.as_module(&z.cyclic(6)).unwrap();
        assert_eq!(six.size(), 5);
        assert_eq!(six.exponent(), Some(5));
        assert_eq!(incl, vec![0, 6, 12, 18, 24]);
        assert_eq!(z.as_module(&z.zero_submodule()).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn znz_over_cyclic_ring() {
        let m = module(RingSpec::Zn(30), ModuleSpec::Znz(30));
        assert_eq!(m.enumerate_submodules().unwrap().len(), 8);
        let m6 = module(RingSpec::Zn(12), ModuleSpec::Znz(6));
        assert_eq!(m6.act(7, 1), 1);
    }
}
