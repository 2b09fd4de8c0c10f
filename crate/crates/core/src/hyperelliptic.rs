//! Node-type bookkeeping for hyperelliptic degenerations and the identities
//! linking it to `φ`, `ε` and `ψ`.
//!
//! Nodes of type 0 are non-separating; those fixed by the involution are
//! counted in `xi0_fixed`, swapped pairs of subtype `j` in `xi[j]`. Nodes of
//! type `i ≥ 1` separate genus `i` from genus `h − i` and are counted in
//! `delta_i[i − 1]`. Counts are rational: a node resolved into a chain of
//! unit edges contributes its edge length.

use serde::{Deserialize, Serialize};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PolarizedMetricGraph;
use crate::invariants;
use crate::potential::Potential;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeTypeCounts {
    pub h: u64,
    #[serde(with = "rational::serde_str")]
    pub xi0_fixed: Rational,
    /// `ξ_j` for `j = 0..=⌊(h−1)/2⌋`.
    #[serde(with = "rational::serde_str_vec")]
    pub xi: Vec<Rational>,
    /// `δ_i` for `i = 1..=⌊h/2⌋`, stored at index `i − 1`.
    #[serde(with = "rational::serde_str_vec")]
    pub delta_i: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub delta0: Rational,
}

fn r(n: u64) -> Rational {
    rational::int(n as i64)
}

impl NodeTypeCounts {
    /// Counts with `δ₀ = ξ′₀ + 2 Σ ξ_j` filled in.
    pub fn new(h: u64, xi0_fixed: Rational, xi: Vec<Rational>, delta_i: Vec<Rational>) -> Self {
        let delta0 = &xi0_fixed + xi.iter().sum::<Rational>() * rational::int(2);
        NodeTypeCounts {
            h,
            xi0_fixed,
            xi,
            delta_i,
            delta0,
        }
    }

    /// All-zero counts of the right shape for genus `h`.
    pub fn zero(h: u64) -> Self {
        let nxi = (h.saturating_sub(1) / 2 + 1) as usize;
        let ndelta = (h / 2) as usize;
        Self::new(
            h,
            Rational::zero(),
            vec![Rational::zero(); nxi],
            vec![Rational::zero(); ndelta],
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("counts serialize")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InconsistentCounts(m));
        if self.h < 2 {
            return bad(format!("genus {} < 2", self.h));
        }
        let nxi = ((self.h - 1) / 2 + 1) as usize;
        if self.xi.len() != nxi {
            return bad(format!("expected {nxi} xi entries for h = {}, got {}", self.h, self.xi.len()));
        }
        let nd = (self.h / 2) as usize;
        if self.delta_i.len() != nd {
            return bad(format!(
                "expected {nd} delta_i entries for h = {}, got {}",
                self.h,
                self.delta_i.len()
            ));
        }
        let all = std::iter::once(&self.xi0_fixed)
            .chain(&self.xi)
            .chain(&self.delta_i)
            .chain(std::iter::once(&self.delta0));
        if let Some(n) = all.into_iter().find(|x| x.is_negative()) {
            return bad(format!("negative count {}", rational::format(n)));
        }
        let want = &self.xi0_fixed + self.xi.iter().sum::<Rational>() * rational::int(2);
        if want != self.delta0 {
            return bad(format!(
                "delta0 = {} but xi0_fixed + 2 Σ xi = {}",
                rational::format(&self.delta0),
                rational::format(&want)
            ));
        }
        Ok(())
    }

    /// `δ = δ₀ + Σ δ_i`.
    pub fn total_delta(&self) -> Rational {
        &self.delta0 + self.delta_i.iter().sum::<Rational>()
    }
}

/// `d = h ξ′₀ + Σ_j 2(j+1)(h−j) ξ_j + Σ_i 4i(h−i) δ_i`.
pub fn d_invariant(c: &NodeTypeCounts) -> Result<Rational> {
    c.validate()?;
    let h = c.h;
    let mut d = r(h) * &c.xi0_fixed;
    for (j, x) in c.xi.iter().enumerate() {
        let j = j as u64;
        d += r(2 * (j + 1) * (h - j)) * x;
    }
    for (k, x) in c.delta_i.iter().enumerate() {
        let i = k as u64 + 1;
        d += r(4 * i * (h - i)) * x;
    }
    Ok(d)
}

/// `ψ` from the node counts:
/// `(2h+1) ψ = (h−1) δ₀ + Σ_{j≥1} 6j(h−1−j) ξ_j + Σ_i (12i(h−i) − (2h+1)) δ_i`.
pub fn psi_explicit(c: &NodeTypeCounts) -> Result<Rational> {
    c.validate()?;
    let h = c.h as i64;
    let mut rhs = rational::int(h - 1) * &c.delta0;
    for (j, x) in c.xi.iter().enumerate().skip(1) {
        let j = j as i64;
        rhs += rational::int(6 * j * (h - 1 - j)) * x;
    }
    for (k, x) in c.delta_i.iter().enumerate() {
        let i = k as i64 + 1;
        rhs += rational::int(12 * i * (h - i) - (2 * h + 1)) * x;
    }
    Ok(rhs / rational::int(2 * h + 1))
}

/// `(h−1) δ₀ + Σ_{j≥0} (6(j+1)(h−j) − 6h) ξ_j + Σ_i (12i(h−i) − (2h+1)) δ_i`,
/// which equals `3d − (2h+1) δ`.
pub fn combi_rhs(c: &NodeTypeCounts) -> Result<Rational> {
    c.validate()?;
    let h = c.h as i64;
    let mut rhs = rational::int(h - 1) * &c.delta0;
    for (j, x) in c.xi.iter().enumerate() {
        let j = j as i64;
        rhs += rational::int(6 * (j + 1) * (h - j) - 6 * h) * x;
    }
    for (k, x) in c.delta_i.iter().enumerate() {
        let i = k as i64 + 1;
        rhs += rational::int(12 * i * (h - i) - (2 * h + 1)) * x;
    }
    Ok(rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    /// `lhs − rhs`; zero when the identity holds.
    #[serde(with = "rational::serde_str")]
    pub discrepancy: Rational,
    pub exact: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, lhs: Rational, rhs: Rational) -> Self {
        let discrepancy = &lhs - &rhs;
        let exact = discrepancy.is_zero();
        IdentityCheck {
            name,
            lhs,
            rhs,
            discrepancy,
            exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub h: u64,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub epsilon: Rational,
    #[serde(with = "rational::serde_str")]
    pub phi: Rational,
    #[serde(with = "rational::serde_str")]
    pub psi: Rational,
    #[serde(with = "rational::serde_str")]
    pub d: Rational,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_exact(&self) -> bool {
        self.checks.iter().all(|c| c.exact)
    }
}

/// Evaluates, on a graph with a supplied node classification,
/// `(2h−2) φ = 3d − (2h+1)(δ + ε)`, `(2h+1) ψ = 3d − (2h+1) δ`, and the
/// count-side formula for `(2h+1) ψ`.
pub fn check_identities(g: &PolarizedMetricGraph, counts: &NodeTypeCounts) -> Result<IdentityReport> {
    counts.validate()?;
    let pot = Potential::new(g)?;
    let h = pot.genus().1;
    if h != counts.h {
        return Err(Error::GenusMismatch {
            graph: h,
            counts: counts.h,
        });
    }
    let delta = g.total_length();
    if delta != counts.total_delta() {
        return Err(Error::LengthMismatch {
            graph: rational::format(&delta),
            counts: rational::format(&counts.total_delta()),
        });
    }
    let eps = invariants::epsilon_of(&pot)?;
    let ph = invariants::phi_of(&pot)?;
    let ps = invariants::psi_from(h, &eps, &ph);
    let d = d_invariant(counts)?;
    let hr = r(h);
    let two_h_plus_1 = &hr * rational::int(2) + rational::int(1);
    let three_d = &d * rational::int(3);

    let checks = vec![
        IdentityCheck::new(
            "phi",
            (&hr * rational::int(2) - rational::int(2)) * &ph,
            &three_d - &two_h_plus_1 * (&delta + &eps),
        ),
        IdentityCheck::new("psi", &two_h_plus_1 * &ps, &three_d - &two_h_plus_1 * &delta),
        IdentityCheck::new(
            "psi-explicit",
            &two_h_plus_1 * &ps,
            &two_h_plus_1 * psi_explicit(counts)?,
        ),
    ];
    Ok(IdentityReport {
        h,
        delta,
        epsilon: eps,
        phi: ph,
        psi: ps,
        d,
        checks,
    })
}
