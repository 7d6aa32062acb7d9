//! Ideals: enumeration, classification (prime / 1-absorbing prime /
//! 2-absorbing), radicals, maximal spectrum and the good unit element
//! property.
//!
//! All quantifiers run over a [`Scalars`] view: a finite ring together with
//! the set of elements treated as non-units and a canonical scan order. For a
//! finite ring this is the ring itself. For the integers acting on a module of
//! exponent `e` it is `Z_e`, where every residue class counts as a non-unit
//! (each class contains integers other than 1 and -1) and residue 1 is
//! scanned last and reported as the integer `e + 1`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::Tables;
use crate::ring::{build_ring, FiniteRing, Ring, RingSpec};
use crate::Limits;

/// An ideal given either by its elements (finite rings) or by a
/// nonnegative generator (the integers).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    Elements(ElemSet),
    Generated(u64),
}

impl Ideal {
    pub fn elements(&self) -> Option<&ElemSet> {
        match self {
            Ideal::Elements(s) => Some(s),
            Ideal::Generated(_) => None,
        }
    }

    pub fn generator(&self) -> Option<u64> {
        match self {
            Ideal::Generated(g) => Some(*g),
            Ideal::Elements(_) => None,
        }
    }
}

/// Outcome of classifying a proper ideal. Each witness is a tuple of scalar
/// indices that violates the corresponding definition; `None` means the
/// property holds.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IdealVerdict {
    pub prime_witness: Option<[u32; 2]>,
    pub one_absorbing_witness: Option<[u32; 3]>,
    pub two_absorbing_witness: Option<[u32; 3]>,
}

impl IdealVerdict {
    pub fn prime(&self) -> bool {
        self.prime_witness.is_none()
    }

    pub fn one_absorbing(&self) -> bool {
        self.one_absorbing_witness.is_none()
    }

    pub fn two_absorbing(&self) -> bool {
        self.two_absorbing_witness.is_none()
    }
}

pub struct IdealLattice {
    ideals: Vec<ElemSet>,
    verdicts: Vec<OnceLock<IdealVerdict>>,
    index: HashMap<ElemSet, usize>,
}

impl IdealLattice {
    /// Every ideal including the whole ring, in canonical order.
    pub fn ideals(&self) -> &[ElemSet] {
        &self.ideals
    }

    pub fn position(&self, ideal: &ElemSet) -> Option<usize> {
        self.index.get(ideal).copied()
    }
}

/// The finite ring through which scalars act, with its non-unit predicate.
pub struct Scalars {
    ring: Arc<FiniteRing>,
    modulus: Option<u64>,
    nonunit: ElemSet,
    order: Vec<u32>,
    limits: Limits,
    lattice: OnceLock<Result<Arc<IdealLattice>>>,
}

impl fmt::Debug for Scalars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scalars")
            .field("ring", &self.ring.name())
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Scalars {
    pub fn of_ring(ring: Arc<FiniteRing>, limits: Limits) -> Scalars {
        let n = ring.size();
        let nonunit = ElemSet::from_elems(n, (0..n as u32).filter(|&a| !ring.is_unit(a)));
        Scalars {
            order: (0..n as u32).collect(),
            ring,
            modulus: None,
            nonunit,
            limits,
            lattice: OnceLock::new(),
        }
    }

    /// Integer scalars acting through `Z_e`.
    pub fn integers_mod(e: u64, limits: Limits) -> Result<Scalars> {
        let ring = match build_ring(&RingSpec::Zn(e), &limits)? {
            Ring::Finite(r) => r,
            Ring::Integers => unreachable!(),
        };
        let n = ring.size() as u32;
        let order = (0..n).filter(|&r| r != 1).chain([1]).collect();
        Ok(Scalars {
            nonunit: ElemSet::full(n as usize),
            order,
            ring,
            modulus: Some(e),
            limits,
            lattice: OnceLock::new(),
        })
    }

    /// The view a ring presents to quantifiers over its own ideals. For the
    /// integers and a nonzero generator `g`, this is `Z_g`.
    pub(crate) fn for_ideal(ring: &Ring, ideal: &Ideal, limits: Limits) -> Result<(Scalars, ElemSet)> {
        match (ring, ideal) {
            (Ring::Finite(r), Ideal::Elements(set)) => {
                if set.universe() != r.size() || !r.is_ideal(set) {
                    return Err(Error::NotClosed);
                }
                Ok((Scalars::of_ring(r.clone(), limits), set.clone()))
            }
            (Ring::Integers, Ideal::Generated(g)) if *g >= 2 => {
                let view = Scalars::integers_mod(*g, limits)?;
                let zero = ElemSet::from_elems(*g as usize, [0]);
                Ok((view, zero))
            }
            (Ring::Integers, Ideal::Generated(1)) => Err(Error::ImproperIdeal),
            (Ring::Integers, Ideal::Generated(_)) => Err(Error::Unsupported(
                "the zero ideal of Z has no finite residue view".into(),
            )),
            (Ring::Finite(_), Ideal::Generated(_)) => Err(Error::Unsupported(
                "finite-ring ideals are given by their elements".into(),
            )),
            (Ring::Integers, Ideal::Elements(_)) => Err(Error::Unsupported(
                "ideals of Z are given by a generator".into(),
            )),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.ring.size()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `Some(e)` when these are integers acting modulo `e`.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Canonical scan order.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn is_nonunit(&self, a: u32) -> bool {
        self.nonunit.contains(a)
    }

    pub fn nonunits(&self) -> impl Iterator<Item = u32> + '_ {
        self.order.iter().copied().filter(|&a| self.is_nonunit(a))
    }

    pub fn one(&self) -> u32 {
        self.ring.one()
    }

    /// The integer a residue stands for in reports: residue 1 stands for
    /// `e + 1`, which is not a unit of Z.
    pub fn representative(&self, a: u32) -> Option<u64> {
        self.modulus
            .map(|e| if a == 1 { e + 1 } else { a as u64 })
    }

    pub fn label(&self, a: u32) -> String {
        match self.representative(a) {
            Some(k) => k.to_string(),
            None => self.ring.label(a).to_string(),
        }
    }

    pub fn parse(&self, token: &str) -> Result<u32> {
        match self.modulus {
            Some(e) => {
                let k: i64 = token
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownElement(token.to_string()))?;
                Ok(k.rem_euclid(e as i64) as u32)
            }
            None => self
                .ring
                .element(token)
                .ok_or_else(|| Error::UnknownElement(token.to_string())),
        }
    }

    pub(crate) fn tables(&self) -> Tables<'_> {
        Tables {
            size: self.ring.size(),
            add: self.ring.add_table(),
            act: self.ring.mul_table(),
        }
    }

    pub fn principal(&self, x: u32) -> ElemSet {
        self.tables().orbit(x)
    }

    pub fn span<I: IntoIterator<Item = u32>>(&self, gens: I) -> ElemSet {
        self.tables().span(gens)
    }

    /// The ideal product `IJ`.
    pub fn product(&self, i: &ElemSet, j: &ElemSet) -> ElemSet {
        let r = &self.ring;
        self.span(i.iter().flat_map(|a| j.iter().map(move |b| r.mul(a, b))))
    }

    pub fn whole(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    pub fn zero_ideal(&self) -> ElemSet {
        ElemSet::from_elems(self.size(), [0])
    }

    pub fn is_proper(&self, ideal: &ElemSet) -> bool {
        !ideal.contains(self.one())
    }

    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        set.universe() == self.size() && self.tables().is_closed(set)
    }

    pub fn generators(&self, ideal: &ElemSet) -> Vec<u32> {
        self.tables().generators(ideal)
    }

    /// Converts an ideal of this view to the ring-level representation: for
    /// integer scalars, the ideal `(d)` of Z with `d | e`.
    pub fn to_ideal(&self, set: &ElemSet) -> Ideal {
        match self.modulus {
            Some(e) => Ideal::Generated(set.iter().find(|&r| r > 0).map_or(e, u64::from)),
            None => Ideal::Elements(set.clone()),
        }
    }

    /// The image of a ring-level ideal in this view.
    pub fn from_ideal(&self, ideal: &Ideal) -> Result<ElemSet> {
        match (self.modulus, ideal) {
            (Some(e), Ideal::Generated(g)) => {
                let d = gcd(*g, e);
                Ok(ElemSet::from_elems(
                    self.size(),
                    (0..e).step_by(d as usize).map(|k| k as u32),
                ))
            }
            (None, Ideal::Elements(set)) if self.is_ideal(set) => Ok(set.clone()),
            (None, Ideal::Elements(_)) => Err(Error::NotClosed),
            _ => Err(Error::Unsupported("ideal does not belong to this ring".into())),
        }
    }

    pub fn ideal_label(&self, set: &ElemSet) -> String {
        if let Some(e) = self.modulus {
            let g = set.iter().find(|&r| r > 0).map_or(e, u64::from);
            return format!("({g})");
        }
        let gens = self.generators(set);
        if gens.is_empty() {
            return "(0)".to_string();
        }
        let labels: Vec<&str> = gens.iter().map(|&g| self.ring.label(g)).collect();
        format!("({})", labels.join(","))
    }

    pub fn lattice(&self) -> Result<Arc<IdealLattice>> {
        self.lattice
            .get_or_init(|| {
                let ideals = self.tables().enumerate(self.limits.max_lattice)?;
                let index = ideals
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect();
                let verdicts = ideals.iter().map(|_| OnceLock::new()).collect();
                Ok(Arc::new(IdealLattice {
                    ideals,
                    verdicts,
                    index,
                }))
            })
            .clone()
    }

    /// Every ideal of the view, including the whole ring, canonically ordered.
    pub fn ideals(&self) -> Result<Vec<ElemSet>> {
        Ok(self.lattice()?.ideals.clone())
    }

    /// Ideals that quantifiers over "proper ideals of R" range over. For a
    /// finite ring these are the proper ideals; for integer scalars every
    /// ideal of `Z_e` is the image of a proper ideal of Z (the whole of `Z_e`
    /// is the image of `(e + 1)`).
    pub fn quantified_ideals(&self) -> Result<Vec<ElemSet>> {
        let all = self.ideals()?;
        Ok(match self.modulus {
            Some(_) => all,
            None => all.into_iter().filter(|i| self.is_proper(i)).collect(),
        })
    }

    /// Like [`quantified_ideals`](Self::quantified_ideals) but ordered by first
    /// principal generator in scan order, with non-principal ideals after.
    pub fn quantified_ideals_by_generator(&self) -> Result<Vec<ElemSet>> {
        let keep = |i: &ElemSet| self.modulus.is_some() || self.is_proper(i);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &x in &self.order {
            let p = self.principal(x);
            if keep(&p) && seen.insert(p.clone()) {
                out.push(p);
            }
        }
        for i in self.ideals()? {
            if keep(&i) && seen.insert(i.clone()) {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn classify(&self, ideal: &ElemSet) -> Result<IdealVerdict> {
        if !self.is_proper(ideal) {
            return Err(Error::ImproperIdeal);
        }
        if let Some(Ok(lat)) = self.lattice.get() {
            if let Some(i) = lat.position(ideal) {
                return Ok(lat.verdicts[i]
                    .get_or_init(|| self.classify_uncached(ideal))
                    .clone());
            }
        }
        Ok(self.classify_uncached(ideal))
    }

    fn classify_uncached(&self, ideal: &ElemSet) -> IdealVerdict {
        let r = &self.ring;
        let inn = |x: u32| ideal.contains(x);
        let nonunits: Vec<u32> = self.nonunits().collect();

        let mut prime_witness = None;
        'prime: for &a in &self.order {
            if inn(a) {
                continue;
            }
            for &b in &self.order {
                if !inn(b) && inn(r.mul(a, b)) {
                    prime_witness = Some([a, b]);
                    break 'prime;
                }
            }
        }

        let mut one_absorbing_witness = None;
        'one: for &a in &nonunits {
            for &b in &nonunits {
                let ab = r.mul(a, b);
                if inn(ab) {
                    continue;
                }
                for &c in &nonunits {
                    if !inn(c) && inn(r.mul(ab, c)) {
                        one_absorbing_witness = Some([a, b, c]);
                        break 'one;
                    }
                }
            }
        }

        let mut two_absorbing_witness = None;
        'two: for &a in &self.order {
            for &b in &self.order {
                let ab = r.mul(a, b);
                if inn(ab) {
                    continue;
                }
                for &c in &self.order {
                    if inn(r.mul(ab, c)) && !inn(r.mul(a, c)) && !inn(r.mul(b, c)) {
                        two_absorbing_witness = Some([a, b, c]);
                        break 'two;
                    }
                }
            }
        }

        IdealVerdict {
            prime_witness,
            one_absorbing_witness,
            two_absorbing_witness,
        }
    }

    /// `{ r | r^k in I for some k }`.
    pub fn radical(&self, ideal: &ElemSet) -> ElemSet {
        let r = &self.ring;
        ElemSet::from_elems(
            self.size(),
            (0..self.size() as u32).filter(|&x| {
                let mut p = x;
                for _ in 0..self.size() {
                    if ideal.contains(p) {
                        return true;
                    }
                    p = r.mul(p, x);
                }
                false
            }),
        )
    }

    /// Intersection of the prime ideals containing `ideal`.
    pub fn radical_via_primes(&self, ideal: &ElemSet) -> Result<ElemSet> {
        let mut acc = self.whole();
        for p in self.ideals()? {
            if self.is_proper(&p) && ideal.is_subset(&p) && self.classify(&p)?.prime() {
                acc = acc.intersection(&p);
            }
        }
        Ok(acc)
    }

    /// 1-absorbing prime ideals containing `ideal`.
    pub fn one_absorbing_over(&self, ideal: &ElemSet) -> Result<Vec<ElemSet>> {
        let mut out = Vec::new();
        for p in self.ideals()? {
            if self.is_proper(&p) && ideal.is_subset(&p) && self.classify(&p)?.one_absorbing() {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// Intersection of the 1-absorbing prime ideals containing `ideal`; the
    /// whole ring when there are none or `ideal` is not proper.
    pub fn rad1(&self, ideal: &ElemSet) -> Result<ElemSet> {
        if !self.is_proper(ideal) {
            return Ok(self.whole());
        }
        let omega = self.one_absorbing_over(ideal)?;
        Ok(omega
            .iter()
            .fold(self.whole(), |acc, p| acc.intersection(p)))
    }

    pub fn maximal_ideals(&self) -> Result<Vec<ElemSet>> {
        let proper: Vec<ElemSet> = self
            .ideals()?
            .into_iter()
            .filter(|i| self.is_proper(i))
            .collect();
        Ok(proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j != *i && i.is_subset(j)))
            .cloned()
            .collect())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn finite_view(ring: &Ring, limits: &Limits) -> Result<Scalars> {
    match ring {
        Ring::Finite(r) => Ok(Scalars::of_ring(r.clone(), *limits)),
        Ring::Integers => Err(Error::Unsupported(
            "enumeration unsupported for the integers; supply generators".into(),
        )),
    }
}

pub fn enumerate_ideals(ring: &Ring, limits: &Limits) -> Result<Vec<Ideal>> {
    let view = finite_view(ring, limits)?;
    Ok(view.ideals()?.into_iter().map(Ideal::Elements).collect())
}

/// Maximal ideals and whether there is exactly one.
pub fn maximal_spectrum(ring: &Ring, limits: &Limits) -> Result<(Vec<Ideal>, bool)> {
    let view = finite_view(ring, limits)?;
    let max = view.maximal_ideals()?;
    let quasilocal = max.len() == 1;
    Ok((max.into_iter().map(Ideal::Elements).collect(), quasilocal))
}

/// For an integer ideal `(g)`, witness indices are residues modulo `g`
/// (residue 1 standing for `g + 1`).
pub fn classify_ideal(ring: &Ring, ideal: &Ideal) -> Result<IdealVerdict> {
    if let (Ring::Integers, Ideal::Generated(0)) = (ring, ideal) {
        return Ok(IdealVerdict::default());
    }
    let (view, set) = Scalars::for_ideal(ring, ideal, Limits::default())?;
    view.classify(&set)
}

pub fn radical_ideal(ring: &Ring, ideal: &Ideal) -> Result<Ideal> {
    if let (Ring::Integers, Ideal::Generated(0)) = (ring, ideal) {
        return Ok(Ideal::Generated(0));
    }
    let (view, set) = Scalars::for_ideal(ring, ideal, Limits::default())?;
    if !view.is_proper(&set) {
        return Err(Error::ImproperIdeal);
    }
    Ok(view.to_ideal(&view.radical(&set)))
}

pub fn rad1_ideal(ring: &Ring, ideal: &Ideal, limits: &Limits) -> Result<Ideal> {
    match (ring, ideal) {
        // (0) is prime in Z, so it is its own rad1.
        (Ring::Integers, Ideal::Generated(0)) => return Ok(Ideal::Generated(0)),
        (Ring::Integers, Ideal::Generated(1)) => return Ok(Ideal::Generated(1)),
        _ => {}
    }
    let (view, set) = Scalars::for_ideal(ring, ideal, *limits)?;
    let r = view.rad1(&set)?;
    if !view.is_proper(&r) {
        return Ok(match ring {
            Ring::Integers => Ideal::Generated(1),
            Ring::Finite(_) => Ideal::Elements(r),
        });
    }
    Ok(view.to_ideal(&r))
}

/// `R/I` together with its projection.
#[derive(Clone, Debug)]
pub struct RingQuotient {
    pub ring: Arc<FiniteRing>,
    projection: Projection,
}

#[derive(Clone, Debug)]
enum Projection {
    Table(Vec<u32>),
    Modulo(u64),
}

impl RingQuotient {
    /// Image of an element of a finite source ring.
    pub fn project(&self, x: u32) -> u32 {
        match &self.projection {
            Projection::Table(t) => t[x as usize],
            Projection::Modulo(n) => (x as u64 % n) as u32,
        }
    }

    /// Image of an integer (integers source only).
    pub fn project_int(&self, k: i64) -> u32 {
        match &self.projection {
            Projection::Modulo(n) => k.rem_euclid(*n as i64) as u32,
            Projection::Table(_) => panic!("project_int on a finite source ring"),
        }
    }

    pub(crate) fn table(&self) -> Option<&[u32]> {
        match &self.projection {
            Projection::Table(t) => Some(t),
            Projection::Modulo(_) => None,
        }
    }
}

pub fn quotient_ring(ring: &Ring, ideal: &Ideal, limits: &Limits) -> Result<RingQuotient> {
    match (ring, ideal) {
        (Ring::Integers, Ideal::Generated(1)) => Err(Error::ImproperIdeal),
        (Ring::Integers, Ideal::Generated(0)) => Err(Error::Unsupported(
            "Z/(0) is the integers themselves".into(),
        )),
        (Ring::Integers, Ideal::Generated(n)) => {
            let r = match build_ring(&RingSpec::Zn(*n), limits)? {
                Ring::Finite(r) => r,
                Ring::Integers => unreachable!(),
            };
            Ok(RingQuotient {
                ring: r,
                projection: Projection::Modulo(*n),
            })
        }
        (Ring::Finite(r), Ideal::Elements(set)) => {
            let view = Scalars::of_ring(r.clone(), *limits);
            let label = view.ideal_label(set);
            let (q, proj) = r.quotient(set, &label)?;
            Ok(RingQuotient {
                ring: Arc::new(q),
                projection: Projection::Table(proj),
            })
        }
        _ => Err(Error::Unsupported("ideal does not belong to this ring".into())),
    }
}

/// Whether the units of `R/I` are exactly the images of the units of `R`.
pub fn good_unit_property(ring: &Ring, ideal: &Ideal, limits: &Limits) -> Result<bool> {
    if let (Ring::Integers, Ideal::Generated(0)) = (ring, ideal) {
        return Ok(true);
    }
    let q = quotient_ring(ring, ideal, limits)?;
    let image: HashSet<u32> = match ring {
        Ring::Integers => [q.project_int(1), q.project_int(-1)].into_iter().collect(),
        Ring::Finite(r) => r.units().iter().map(|u| q.project(u)).collect(),
    };
    let target: HashSet<u32> = q.ring.units().iter().collect();
    Ok(image == target)
}
