//! The seven stable polarized graph types of genus two.
//!
//! Edges are named `e1`, `e2`, `e3` in the order of the variables
//! `x₁, x₂, x₃` of the closed forms; for type VI the bridge comes first.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PolarizedMetricGraph;
use crate::hyperelliptic::NodeTypeCounts;
use crate::invariants;
use crate::poly::Polynomial;
use crate::rational::{self, int, Rational};
use crate::recovery::MultivariateRationalFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Genus2Type {
    Trivial,
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Genus2Type {
    pub const ALL: [Genus2Type; 7] = [
        Genus2Type::Trivial,
        Genus2Type::I,
        Genus2Type::II,
        Genus2Type::III,
        Genus2Type::IV,
        Genus2Type::V,
        Genus2Type::VI,
    ];

    /// The six types with at least one edge.
    pub const DEGENERATE: [Genus2Type; 6] = [
        Genus2Type::I,
        Genus2Type::II,
        Genus2Type::III,
        Genus2Type::IV,
        Genus2Type::V,
        Genus2Type::VI,
    ];

    pub fn arity(self) -> usize {
        match self {
            Genus2Type::Trivial => 0,
            Genus2Type::I => 3,
            Genus2Type::II => 1,
            Genus2Type::III => 1,
            Genus2Type::IV => 2,
            Genus2Type::V => 2,
            Genus2Type::VI => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Genus2Type::Trivial => "trivial",
            Genus2Type::I => "I",
            Genus2Type::II => "II",
            Genus2Type::III => "III",
            Genus2Type::IV => "IV",
            Genus2Type::V => "V",
            Genus2Type::VI => "VI",
        }
    }

    fn check_arity(self, lengths: &[Rational]) -> Result<()> {
        if lengths.len() != self.arity() {
            return Err(Error::ArityMismatch {
                tag: self.name().to_string(),
                expected: self.arity(),
                got: lengths.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Genus2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Genus2Type {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Genus2Type::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown genus-two type {s:?} (expected one of trivial, I, II, III, IV, V, VI)"
                ))
            })
    }
}

/// Builds the catalog graph of the given type.
pub fn build(tag: Genus2Type, lengths: &[Rational]) -> Result<PolarizedMetricGraph> {
    tag.check_arity(lengths)?;
    let l = |i: usize| lengths[i].clone();
    let (vs, es): (Vec<(&str, u32)>, Vec<(&str, &str, &str, Rational)>) = match tag {
        Genus2Type::Trivial => (vec![("v", 2)], vec![]),
        Genus2Type::I => (
            vec![("a", 0), ("b", 0)],
            vec![("e1", "a", "b", l(0)), ("e2", "a", "b", l(1)), ("e3", "a", "b", l(2))],
        ),
        Genus2Type::II => (vec![("a", 1), ("b", 1)], vec![("e1", "a", "b", l(0))]),
        Genus2Type::III => (vec![("v", 1)], vec![("e1", "v", "v", l(0))]),
        Genus2Type::IV => (
            vec![("a", 1), ("b", 0)],
            vec![("e1", "a", "b", l(0)), ("e2", "b", "b", l(1))],
        ),
        Genus2Type::V => (
            vec![("v", 0)],
            vec![("e1", "v", "v", l(0)), ("e2", "v", "v", l(1))],
        ),
        Genus2Type::VI => (
            vec![("a", 0), ("b", 0)],
            vec![("e1", "a", "b", l(0)), ("e2", "a", "a", l(1)), ("e3", "b", "b", l(2))],
        ),
    };
    let g = PolarizedMetricGraph::new(
        vs.into_iter().map(|(v, q)| (v.to_string(), q)),
        es.into_iter()
            .map(|(e, a, b, len)| (e.to_string(), a.to_string(), b.to_string(), len)),
    )?;
    g.require_valid()?;
    Ok(g)
}

/// The closed-form value of `φ` for the type.
pub fn closed_form_phi(tag: Genus2Type, x: &[Rational]) -> Result<Rational> {
    tag.check_arity(x)?;
    let twelfth = rational::ratio(1, 12);
    Ok(match tag {
        Genus2Type::Trivial => Rational::zero(),
        Genus2Type::I => {
            let sum = &x[0] + &x[1] + &x[2];
            let prod = &x[0] * &x[1] * &x[2];
            let pairs = &x[0] * &x[1] + &x[1] * &x[2] + &x[2] * &x[0];
            &twelfth * sum - rational::ratio(5, 12) * prod / pairs
        }
        Genus2Type::II => x[0].clone(),
        Genus2Type::III => &twelfth * &x[0],
        Genus2Type::IV => &x[0] + &twelfth * &x[1],
        Genus2Type::V => &twelfth * (&x[0] + &x[1]),
        Genus2Type::VI => &x[0] + &twelfth * (&x[1] + &x[2]),
    })
}

/// The closed form of [`closed_form_phi`] as a rational function in `x₁..x_r`.
pub fn closed_form_function(tag: Genus2Type) -> MultivariateRationalFunction {
    let r = tag.arity();
    let x = |i: usize| Polynomial::variable(r, i);
    let c = |n: i64| Polynomial::constant(r, int(n));
    let (p, q) = match tag {
        Genus2Type::Trivial => (Polynomial::zero(r), c(1)),
        Genus2Type::I => {
            let sum = x(0).add(&x(1)).add(&x(2));
            let pairs = x(0).mul(&x(1)).add(&x(1).mul(&x(2))).add(&x(2).mul(&x(0)));
            let prod = x(0).mul(&x(1)).mul(&x(2));
            (sum.mul(&pairs).sub(&prod.scale(&int(5))), pairs.scale(&int(12)))
        }
        Genus2Type::II => (x(0), c(1)),
        Genus2Type::III => (x(0), c(12)),
        Genus2Type::IV => (x(0).scale(&int(12)).add(&x(1)), c(12)),
        Genus2Type::V => (x(0).add(&x(1)), c(12)),
        Genus2Type::VI => (x(0).scale(&int(12)).add(&x(1)).add(&x(2)), c(12)),
    };
    let names = (1..=r).map(|i| format!("e{i}")).collect();
    MultivariateRationalFunction::new(names, p, q).expect("catalog function")
}

/// Node-type classification of each catalog type under the hyperelliptic
/// involution. Every node of a genus-two curve is fixed by the involution,
/// so the non-separating nodes all count towards `ξ′₀` and the bridges
/// towards `δ₁`.
pub fn documented_counts(tag: Genus2Type, x: &[Rational]) -> Result<NodeTypeCounts> {
    tag.check_arity(x)?;
    let z = Rational::zero;
    let (fixed, d1) = match tag {
        Genus2Type::Trivial => (z(), z()),
        Genus2Type::I => (&x[0] + &x[1] + &x[2], z()),
        Genus2Type::II => (z(), x[0].clone()),
        Genus2Type::III => (x[0].clone(), z()),
        Genus2Type::IV => (x[1].clone(), x[0].clone()),
        Genus2Type::V => (&x[0] + &x[1], z()),
        Genus2Type::VI => (&x[1] + &x[2], x[0].clone()),
    };
    Ok(NodeTypeCounts::new(2, fixed, vec![z()], vec![d1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub tag: Genus2Type,
    #[serde(with = "rational::serde_str_vec")]
    pub lengths: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub engine: Rational,
    #[serde(with = "rational::serde_str")]
    pub closed_form: Rational,
    #[serde(with = "rational::serde_str")]
    pub discrepancy: Rational,
    pub equal: bool,
}

/// Compares the engine's `φ` on the catalog graph with the closed form.
pub fn check_closed_form(tag: Genus2Type, lengths: &[Rational]) -> Result<ClosedFormCheck> {
    let g = build(tag, lengths)?;
    let engine = invariants::phi(&g)?;
    let closed_form = closed_form_phi(tag, lengths)?;
    let discrepancy = &engine - &closed_form;
    Ok(ClosedFormCheck {
        tag,
        lengths: lengths.to_vec(),
        equal: discrepancy.is_zero(),
        engine,
        closed_form,
        discrepancy,
    })
}

/// A rational multiple of an integer power of `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PiMonomial {
    coeff: Rational,
    pi_power: i32,
}

impl PiMonomial {
    fn new(coeff: Rational, pi_power: i32) -> Self {
        PiMonomial { coeff, pi_power }
    }

    fn mul(&self, o: &Self) -> Self {
        PiMonomial::new(&self.coeff * &o.coeff, self.pi_power + o.pi_power)
    }

    fn div(&self, o: &Self) -> Self {
        PiMonomial::new(&self.coeff / &o.coeff, self.pi_power - o.pi_power)
    }

    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.pi_power, o.pi_power, "adding unlike powers of pi");
        PiMonomial::new(&self.coeff + &o.coeff, self.pi_power)
    }

    fn scale(&self, c: Rational) -> Self {
        PiMonomial::new(&self.coeff * c, self.pi_power)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupergravityCheck {
    #[serde(with = "rational::serde_str_vec")]
    pub lengths: Vec<Rational>,
    /// Power of `π` left in the leading term after substitution; zero when
    /// the factors cancel.
    pub residual_pi_power: i32,
    #[serde(with = "rational::serde_str")]
    pub leading_term: Rational,
    #[serde(with = "rational::serde_str")]
    pub closed_form: Rational,
    pub equal: bool,
}

/// Evaluates `(π/6)[ΣLᵢ − 5L₁L₂L₃/(L₁L₂ + L₂L₃ + L₃L₁)]` at `Lᵢ = xᵢ/(2π)`,
/// carrying `π` symbolically, and compares it with the type I closed form.
pub fn sunset_supergrav_crosscheck(x: &[Rational]) -> Result<SupergravityCheck> {
    Genus2Type::I.check_arity(x)?;
    let l: Vec<PiMonomial> = x
        .iter()
        .map(|xi| PiMonomial::new(xi / int(2), -1))
        .collect();
    let sum = l[0].add(&l[1]).add(&l[2]);
    let prod = l[0].mul(&l[1]).mul(&l[2]);
    let pairs = l[0].mul(&l[1]).add(&l[1].mul(&l[2])).add(&l[2].mul(&l[0]));
    let bracket = sum.add(&prod.div(&pairs).scale(int(-5)));
    let lead = PiMonomial::new(rational::ratio(1, 6), 1).mul(&bracket);
    let closed_form = closed_form_phi(Genus2Type::I, x)?;
    Ok(SupergravityCheck {
        lengths: x.to_vec(),
        residual_pi_power: lead.pi_power,
        equal: lead.pi_power == 0 && lead.coeff == closed_form,
        leading_term: lead.coeff,
        closed_form,
    })
}
