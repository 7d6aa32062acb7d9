//! Finite commutative rings stored as Cayley tables, plus the symbolic ring
//! of integers.
//!
//! Elements of a finite ring are indices `0..size` in mixed-radix order:
//! residues for `Z_n`, tuples (first component most significant) for
//! products, and coefficient vectors (constant term least significant) for
//! `Z_n[x]/(f)`. Index `0` is always the zero element.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::Limits;

/// Largest carrier for which the ring axioms are checked on every triple.
const FULL_LAW_CHECK: usize = 64;
const SAMPLED_LAW_CHECKS: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn(u64),
    Product(Vec<RingSpec>),
    /// `Z_modulus[x] / (f)` with `f` given by its coefficients, constant term
    /// first; the last coefficient must be 1.
    PolyQuot { modulus: u64, coeffs: Vec<u64> },
    Integers,
}

impl RingSpec {
    pub fn name(&self) -> String {
        match self {
            RingSpec::Zn(n) => format!("Z_{n}"),
            RingSpec::Integers => "Z".to_string(),
            RingSpec::Product(parts) => parts
                .iter()
                .map(|p| match p {
                    RingSpec::Product(_) => format!("({})", p.name()),
                    _ => p.name(),
                })
                .collect::<Vec<_>>()
                .join("x"),
            RingSpec::PolyQuot { modulus, coeffs } => {
                format!("Z_{modulus}[x]/({})", poly_label(coeffs, "x", true))
            }
        }
    }

    /// Number of elements, or `None` for the integers.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            RingSpec::Zn(n) => Some(*n as u128),
            RingSpec::Integers => None,
            RingSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, p| p.cardinality().map(|c| acc.saturating_mul(c))),
            RingSpec::PolyQuot { modulus, coeffs } => {
                let degree = coeffs.len().saturating_sub(1) as u32;
                Some((*modulus as u128).saturating_pow(degree))
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Renders a coefficient vector (constant term first) as `1+x+3x^2`.
/// `monic_full` renders every term, including zero-free leading ones, which
/// is what polynomial moduli want; element labels skip zero terms.
fn poly_label(coeffs: &[u64], var: &str, monic_full: bool) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    if monic_full {
        terms.reverse();
    }
    terms.join("+")
}

/// A finite commutative ring with identity, materialised as Cayley tables.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    name: String,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: u32,
    labels: Vec<String>,
    lookup: HashMap<String, u32>,
    units: ElemSet,
}

impl FiniteRing {
    /// Builds the tables from element-wise operations and checks the ring
    /// laws (every triple up to 64 elements, a fixed random sample above).
    pub(crate) fn from_ops<A, M>(
        name: String,
        labels: Vec<String>,
        one: u32,
        add: A,
        mul: M,
    ) -> Result<FiniteRing>
    where
        A: Fn(u32, u32) -> u32,
        M: Fn(u32, u32) -> u32,
    {
        let size = labels.len();
        let mut add_t = vec![0u32; size * size];
        let mut mul_t = vec![0u32; size * size];
        for a in 0..size as u32 {
            for b in 0..size as u32 {
                let i = a as usize * size + b as usize;
                add_t[i] = add(a, b);
                mul_t[i] = mul(a, b);
            }
        }
        Self::from_tables(name, labels, one, add_t, mul_t)
    }

    pub(crate) fn from_tables(
        name: String,
        labels: Vec<String>,
        one: u32,
        add: Vec<u32>,
        mul: Vec<u32>,
    ) -> Result<FiniteRing> {
        let size = labels.len();
        let mut neg = vec![u32::MAX; size];
        for a in 0..size {
            if let Some(b) = (0..size).find(|&b| add[a * size + b] == 0) {
                neg[a] = b as u32;
            } else {
                return Err(Error::RingLaw(format!("{} has no additive inverse", labels[a])));
            }
        }
        let units = ElemSet::from_elems(
            size,
            (0..size as u32).filter(|&a| (0..size).any(|b| mul[a as usize * size + b] == one)),
        );
        let lookup = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let ring = FiniteRing {
            name,
            size,
            add,
            mul,
            neg,
            one,
            labels,
            lookup,
            units,
        };
        ring.verify_laws()?;
        Ok(ring)
    }

    fn verify_laws(&self) -> Result<()> {
        let n = self.size as u32;
        let check = |a: u32, b: u32, c: u32| -> Result<()> {
            let fail = |law: &str| {
                Err(Error::RingLaw(format!(
                    "{law} fails at ({}, {}, {})",
                    self.label(a),
                    self.label(b),
                    self.label(c)
                )))
            };
            if self.add(a, b) != self.add(b, a) {
                return fail("additive commutativity");
            }
            if self.mul(a, b) != self.mul(b, a) {
                return fail("multiplicative commutativity");
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("additive associativity");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplicative associativity");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("distributivity");
            }
            if self.add(a, 0) != a || self.mul(a, self.one) != a {
                return fail("identity");
            }
            Ok(())
        };
        if self.one == 0 {
            return Err(Error::RingLaw("1 = 0".into()));
        }
        if self.size <= FULL_LAW_CHECK {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_LAW_CHECKS {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub(crate) fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<u32> {
        let compact: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(&x) = self.lookup.get(&compact) {
            return Some(x);
        }
        // Plain integers denote multiples of the identity.
        let k: i64 = compact.parse().ok()?;
        Some(self.int_multiple(k))
    }

    /// `k * 1` in this ring.
    pub fn int_multiple(&self, k: i64) -> u32 {
        let r = k.unsigned_abs() % self.additive_order(self.one);
        let acc = (0..r).fold(0, |acc, _| self.add(acc, self.one));
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn additive_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn units(&self) -> &ElemSet {
        &self.units
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.units.contains(a)
    }

    /// True when `set` is closed under addition and multiplication by every
    /// ring element.
    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set
                .iter()
                .all(|a| (0..self.size as u32).all(|r| set.contains(self.mul(r, a))))
    }

    /// Quotient by a proper ideal. Cosets are numbered in order of their
    /// least representative, which also supplies the coset's label. The
    /// second component maps each element to its coset.
    pub fn quotient(&self, ideal: &ElemSet, ideal_label: &str) -> Result<(FiniteRing, Vec<u32>)> {
        if ideal.contains(self.one) {
            return Err(Error::ImproperIdeal);
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotClosed);
        }
        let (proj, reps) = cosets(self.size, ideal, |a, b| self.add(a, b));
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let name = if ideal.len() == 1 {
            self.name.clone()
        } else {
            format!("{}/{}", self.name, ideal_label)
        };
        let q = FiniteRing::from_ops(
            name,
            labels,
            proj[self.one as usize],
            |a, b| proj[self.add(reps[a as usize], reps[b as usize]) as usize],
            |a, b| proj[self.mul(reps[a as usize], reps[b as usize]) as usize],
        )?;
        Ok((q, proj))
    }
}

/// Partitions `0..size` into cosets of the additive subgroup `sub`. Returns
/// the projection and the least representative of each coset.
pub(crate) fn cosets<F: Fn(u32, u32) -> u32>(
    size: usize,
    sub: &ElemSet,
    add: F,
) -> (Vec<u32>, Vec<u32>) {
    let mut proj = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size as u32 {
        if proj[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for k in sub.iter() {
            proj[add(x, k) as usize] = id;
        }
    }
    (proj, reps)
}

/// The unit group, which is symbolic for the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Units {
    Elements(Vec<u32>),
    PlusMinusOne,
}

/// A commutative ring with non-zero identity: either finite or the integers.
#[derive(Clone, Debug)]
pub enum Ring {
    Finite(Arc<FiniteRing>),
    Integers,
}

impl Ring {
    pub fn name(&self) -> String {
        match self {
            Ring::Finite(r) => r.name().to_string(),
            Ring::Integers => "Z".to_string(),
        }
    }

    pub fn finite(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            Ring::Finite(r) => Some(r),
            Ring::Integers => None,
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Ring::Integers)
    }

    pub fn units(&self) -> Units {
        match self {
            Ring::Finite(r) => Units::Elements(r.units().as_slice().to_vec()),
            Ring::Integers => Units::PlusMinusOne,
        }
    }
}

pub fn build_ring(spec: &RingSpec, limits: &Limits) -> Result<Ring> {
    if let RingSpec::Integers = spec {
        return Ok(Ring::Integers);
    }
    Ok(Ring::Finite(Arc::new(build_finite(spec, limits)?)))
}

fn build_finite(spec: &RingSpec, limits: &Limits) -> Result<FiniteRing> {
    validate(spec)?;
    let size = spec.cardinality().expect("validated finite spec");
    if size > limits.max_elements as u128 {
        return Err(Error::CapExceeded {
            what: "ring carrier",
            size,
            cap: limits.max_elements,
        });
    }
    match spec {
        RingSpec::Zn(n) => {
            let n = *n as u32;
            FiniteRing::from_ops(
                spec.name(),
                (0..n).map(|k| k.to_string()).collect(),
                1,
                |a, b| ((a as u64 + b as u64) % n as u64) as u32,
                |a, b| ((a as u64 * b as u64) % n as u64) as u32,
            )
        }
        RingSpec::Product(parts) => {
            let parts = parts
                .iter()
                .map(|p| build_finite(p, limits))
                .collect::<Result<Vec<_>>>()?;
            let radix = MixedRadix::new(parts.iter().map(|p| p.size() as u32).collect());
            let labels = (0..radix.size() as u32)
                .map(|i| {
                    let digits = radix.decode(i);
                    let inner: Vec<&str> = digits
                        .iter()
                        .zip(&parts)
                        .map(|(&d, p)| p.label(d))
                        .collect();
                    format!("({})", inner.join(","))
                })
                .collect();
            let one = radix.encode(&parts.iter().map(|p| p.one()).collect::<Vec<_>>());
            let lift = |a: u32, b: u32, op: &dyn Fn(&FiniteRing, u32, u32) -> u32| {
                let (da, db) = (radix.decode(a), radix.decode(b));
                let out: Vec<u32> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| op(p, da[i], db[i]))
                    .collect();
                radix.encode(&out)
            };
            FiniteRing::from_ops(
                spec.name(),
                labels,
                one,
                |a, b| lift(a, b, &|p, x, y| p.add(x, y)),
                |a, b| lift(a, b, &|p, x, y| p.mul(x, y)),
            )
        }
        RingSpec::PolyQuot { modulus, coeffs } => {
            let n = *modulus;
            let d = coeffs.len() - 1;
            let radix = MixedRadix::new(vec![n as u32; d]);
            // Digits are stored most significant first; coefficient i is digit d-1-i.
            let to_poly = |a: u32| -> Vec<u64> {
                let mut digits: Vec<u64> = radix.decode(a).into_iter().map(u64::from).collect();
                digits.reverse();
                digits
            };
            let from_poly = |p: &[u64]| -> u32 {
                let digits: Vec<u32> = p.iter().rev().map(|&c| c as u32).collect();
                radix.encode(&digits)
            };
            let labels = (0..radix.size() as u32)
                .map(|a| poly_label(&to_poly(a), "x", false))
                .collect();
            let mut one_poly = vec![0u64; d];
            one_poly[0] = 1 % n;
            FiniteRing::from_ops(
                spec.name(),
                labels,
                from_poly(&one_poly),
                |a, b| {
                    let (pa, pb) = (to_poly(a), to_poly(b));
                    let s: Vec<u64> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % n).collect();
                    from_poly(&s)
                },
                |a, b| {
                    let (pa, pb) = (to_poly(a), to_poly(b));
                    let mut prod = vec![0u64; 2 * d - 1];
                    for (i, x) in pa.iter().enumerate() {
                        for (j, y) in pb.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % n;
                        }
                    }
                    // Reduce by the monic modulus from the top degree down.
                    for k in (d..prod.len()).rev() {
                        let c = prod[k];
                        if c == 0 {
                            continue;
                        }
                        prod[k] = 0;
                        for (i, &f) in coeffs[..d].iter().enumerate() {
                            let idx = k - d + i;
                            prod[idx] = (prod[idx] + n - (c * (f % n)) % n) % n;
                        }
                    }
                    prod.truncate(d);
                    from_poly(&prod)
                },
            )
        }
        RingSpec::Integers => unreachable!("handled by build_ring"),
    }
}

fn validate(spec: &RingSpec) -> Result<()> {
    match spec {
        RingSpec::Zn(n) if *n < 2 => Err(Error::ZeroRing(*n)),
        RingSpec::Zn(_) => Ok(()),
        RingSpec::Integers => Err(Error::Unsupported(
            "the integers cannot be a factor of a finite ring".into(),
        )),
        RingSpec::Product(parts) if parts.is_empty() => {
            Err(Error::Unsupported("empty product".into()))
        }
        RingSpec::Product(parts) => parts.iter().try_for_each(validate),
        RingSpec::PolyQuot { modulus, coeffs } => {
            if *modulus < 2 {
                return Err(Error::ZeroRing(*modulus));
            }
            if coeffs.len() < 2 || *coeffs.last().unwrap() != 1 {
                return Err(Error::NotMonic);
            }
            Ok(())
        }
    }
}

/// Mixed-radix encoding of tuples; the first digit is the most significant.
#[derive(Clone, Debug)]
pub(crate) struct MixedRadix {
    radices: Vec<u32>,
}

impl MixedRadix {
    pub(crate) fn new(radices: Vec<u32>) -> Self {
        MixedRadix { radices }
    }

    pub(crate) fn size(&self) -> usize {
        self.radices.iter().map(|&r| r as usize).product()
    }

    pub(crate) fn decode(&self, mut x: u32) -> Vec<u32> {
        let mut out = vec![0; self.radices.len()];
        for (i, &r) in self.radices.iter().enumerate().rev() {
            out[i] = x % r;
            x /= r;
        }
        out
    }

    pub(crate) fn encode(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d)
    }
}
