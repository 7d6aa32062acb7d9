//! `rad(N)`, `rad₁(N)` and minimal 1-absorbing primes over `N`.

use crate::error::{Error, Result};
use crate::module::{Module, Submodule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub input: Submodule,
    /// 1-absorbing prime submodules containing the input.
    pub omega: Vec<Submodule>,
    pub result: Submodule,
}

fn meet(m: &Module, subs: &[Submodule]) -> Submodule {
    subs.iter()
        .fold(m.whole(), |acc, p| m.intersection(&acc, p))
}

/// Intersection of the prime submodules containing `n`; `M` when there are none.
pub fn rad_submodule(m: &Module, n: &Submodule) -> Result<Submodule> {
    let a = m.analysis()?;
    let primes: Vec<Submodule> = a
        .primes()
        .into_iter()
        .filter(|p| n.is_subset(p))
        .cloned()
        .collect();
    Ok(meet(m, &primes))
}

pub fn one_absorbing_over(m: &Module, n: &Submodule) -> Result<Vec<Submodule>> {
    let a = m.analysis()?;
    Ok(a.one_absorbing()
        .into_iter()
        .filter(|p| n.is_subset(p))
        .cloned()
        .collect())
}

pub fn rad1_submodule(m: &Module, n: &Submodule) -> Result<RadicalReport> {
    let omega = if m.is_proper(n) {
        one_absorbing_over(m, n)?
    } else {
        Vec::new()
    };
    let result = meet(m, &omega);
    Ok(RadicalReport {
        input: n.clone(),
        omega,
        result,
    })
}

/// Inclusion-minimal members of Ω, in canonical order.
pub fn minimal_one_absorbing_over(m: &Module, n: &Submodule) -> Result<Vec<Submodule>> {
    if !m.is_proper(n) {
        return Err(Error::ImproperSubmodule);
    }
    let omega = one_absorbing_over(m, n)?;
    Ok(omega
        .iter()
        .filter(|p| !omega.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect())
}
