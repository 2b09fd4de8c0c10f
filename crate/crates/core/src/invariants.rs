//! Invariants `δ`, `ε`, `φ`, `ψ` of a polarized metric graph.
//!
//! `ε` and `φ` are integrals of the diagonal `g_μ(x, x) = f(x) − c` against
//! combinations of `μ` and `δ_{K_q}`. The primary path integrates the exact
//! edge polynomials; a second path uses the reductions
//! `ε = Σ K_q(v) f(v)` and `φ = −δ/4 + 3hc − ¼ Σ K_q(v) f(v)`. Both are always
//! computed and must agree exactly.

use serde::Serialize;

use crate::circuit::ResistanceValue;
use crate::error::{Error, Result};
use crate::graph::PolarizedMetricGraph;
use crate::potential::Potential;
use crate::rational::{self, Rational};

/// Digits used for the display-only decimal renderings in reports.
pub const REPORT_DIGITS: usize = 12;

/// `∫ (f − c) d(α μ + β δ_{K_q})`, integrating the edge polynomials exactly.
fn integrate_diagonal(pot: &Potential, mu_weight: &Rational, kq_weight: &Rational) -> Rational {
    let g = pot.graph();
    let kq = g.polarized_coefficients();
    let (atoms, dens) = pot.admissible_vectors();
    let c = pot.capacity();
    let point: Rational = pot
        .vertex_f()
        .iter()
        .zip(atoms)
        .zip(&kq)
        .map(|((f, a), &k)| (mu_weight * a + kq_weight * rational::int(k)) * (f - c))
        .sum();
    let continuous: Rational = pot
        .profiles()
        .iter()
        .zip(dens)
        .map(|(p, d)| mu_weight * d * (p.integral() - c * &p.length))
        .sum();
    point + continuous
}

fn kq_dot_f(pot: &Potential) -> Rational {
    pot.graph()
        .polarized_coefficients()
        .iter()
        .zip(pot.vertex_f())
        .map(|(&k, f)| rational::int(k) * f)
        .sum()
}

fn agree(quantity: &str, primary: Rational, secondary: Rational) -> Result<Rational> {
    if primary == secondary {
        Ok(primary)
    } else {
        Err(Error::CrosscheckFailure {
            quantity: quantity.to_string(),
            primary: rational::format(&primary),
            secondary: rational::format(&secondary),
        })
    }
}

fn h_rat(pot: &Potential) -> Rational {
    rational::int(pot.genus().1 as i64)
}

/// `ε` from a prepared potential.
pub fn epsilon_of(pot: &Potential) -> Result<Rational> {
    let h = h_rat(pot);
    let primary = integrate_diagonal(pot, &(&h * rational::int(2) - rational::int(2)), &rational::int(1));
    agree("epsilon", primary, kq_dot_f(pot))
}

/// `φ` from a prepared potential.
pub fn phi_of(pot: &Potential) -> Result<Rational> {
    let h = h_rat(pot);
    let delta = pot.graph().total_length();
    let quarter = rational::ratio(1, 4);
    let primary = -&delta * &quarter
        + integrate_diagonal(pot, &(&h * rational::int(10) + rational::int(2)), &rational::int(-1))
            * &quarter;
    let secondary =
        -&delta * &quarter + rational::int(3) * &h * pot.capacity() - kq_dot_f(pot) * &quarter;
    agree("phi", primary, secondary)
}

/// `ψ = ε + (2h − 2)/(2h + 1) φ`.
pub fn psi_from(h: u64, epsilon: &Rational, phi: &Rational) -> Rational {
    let h = rational::int(h as i64);
    epsilon + (&h * rational::int(2) - rational::int(2)) / (&h * rational::int(2) + rational::int(1)) * phi
}

pub fn epsilon(g: &PolarizedMetricGraph) -> Result<Rational> {
    epsilon_of(&Potential::new(g)?)
}

pub fn phi(g: &PolarizedMetricGraph) -> Result<Rational> {
    phi_of(&Potential::new(g)?)
}

pub fn psi(g: &PolarizedMetricGraph) -> Result<Rational> {
    let pot = Potential::new(g)?;
    Ok(psi_from(pot.genus().1, &epsilon_of(&pot)?, &phi_of(&pot)?))
}

/// An exact value with a display-only decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    #[serde(with = "rational::serde_str")]
    pub exact: Rational,
    pub decimal: String,
}

impl ExactValue {
    pub fn new(r: Rational) -> Self {
        let decimal = rational::to_decimal(&r, REPORT_DIGITS);
        ExactValue { exact: r, decimal }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeResistance {
    pub edge: String,
    pub r: ResistanceValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureSummary {
    #[serde(with = "rational::serde_str")]
    pub canonical_mass: Rational,
    #[serde(with = "rational::serde_str")]
    pub admissible_mass: Rational,
    #[serde(with = "rational::serde_str")]
    pub foster_sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosschecks {
    pub phi_paths_agree: bool,
    pub epsilon_paths_agree: bool,
    pub psi_identity: bool,
    pub canonical_mass_is_one: bool,
    pub admissible_mass_is_one: bool,
    pub foster_equals_b1: bool,
}

impl Crosschecks {
    pub fn all(&self) -> bool {
        self.phi_paths_agree
            && self.epsilon_paths_agree
            && self.psi_identity
            && self.canonical_mass_is_one
            && self.admissible_mass_is_one
            && self.foster_equals_b1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub h: u64,
    pub b1: u64,
    pub stable: bool,
    pub delta: ExactValue,
    pub epsilon: ExactValue,
    pub phi: ExactValue,
    pub psi: ExactValue,
    pub capacity: ExactValue,
    pub edge_resistances: Vec<EdgeResistance>,
    pub measures: MeasureSummary,
    pub crosschecks: Crosschecks,
}

/// Full report. Any failing crosscheck aborts with the failing check named.
pub fn report(g: &PolarizedMetricGraph) -> Result<InvariantReport> {
    let validation = g.validate()?;
    let pot = Potential::new(g)?;
    let (b1, h) = pot.genus();
    let eps = epsilon_of(&pot)?;
    let ph = phi_of(&pot)?;
    let ps = psi_from(h, &eps, &ph);

    // ψ recomputed from its definition as a weighted diagonal integral
    let hr = h_rat(&pot);
    let w = (&hr * rational::int(2) - rational::int(2)) / (&hr * rational::int(2) + rational::int(1));
    let psi_direct = integrate_diagonal(&pot, &(&hr * rational::int(2) - rational::int(2)), &rational::int(1))
        + &w * (-pot.graph().total_length() * rational::ratio(1, 4)
            + integrate_diagonal(&pot, &(&hr * rational::int(10) + rational::int(2)), &rational::int(-1))
                * rational::ratio(1, 4));
    let one = rational::int(1);
    let can_mass = pot.canonical_measure().total_mass();
    let adm_mass = pot.admissible_measure().total_mass();
    let foster: Rational = pot
        .excised()
        .iter()
        .zip(g.edges())
        .filter_map(|(r, e)| r.finite().map(|r| &e.length / (&e.length + r)))
        .sum();

    let crosschecks = Crosschecks {
        phi_paths_agree: true,
        epsilon_paths_agree: true,
        psi_identity: psi_direct == ps,
        canonical_mass_is_one: can_mass == one,
        admissible_mass_is_one: adm_mass == one,
        foster_equals_b1: foster == rational::int(b1 as i64),
    };
    let checks: [(&str, bool, String, String); 4] = [
        ("psi", crosschecks.psi_identity, rational::format(&psi_direct), rational::format(&ps)),
        ("canonical mass", crosschecks.canonical_mass_is_one, rational::format(&can_mass), "1".into()),
        ("admissible mass", crosschecks.admissible_mass_is_one, rational::format(&adm_mass), "1".into()),
        ("foster sum", crosschecks.foster_equals_b1, rational::format(&foster), b1.to_string()),
    ];
    for (name, ok, p, s) in checks {
        if !ok {
            return Err(Error::CrosscheckFailure {
                quantity: name.to_string(),
                primary: p,
                secondary: s,
            });
        }
    }

    Ok(InvariantReport {
        h,
        b1,
        stable: validation.stable,
        delta: ExactValue::new(g.total_length()),
        epsilon: ExactValue::new(eps),
        phi: ExactValue::new(ph),
        psi: ExactValue::new(ps),
        capacity: ExactValue::new(pot.capacity().clone()),
        edge_resistances: g
            .edges()
            .iter()
            .zip(pot.excised())
            .map(|(e, r)| EdgeResistance {
                edge: e.id.clone(),
                r: r.clone(),
            })
            .collect(),
        measures: MeasureSummary {
            canonical_mass: can_mass,
            admissible_mass: adm_mass,
            foster_sum: foster,
        },
        crosschecks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn g(vs: &[(&str, u32)], es: &[(&str, &str, &str, Rational)]) -> PolarizedMetricGraph {
        PolarizedMetricGraph::new(
            vs.iter().map(|(i, q)| (i.to_string(), *q)),
            es.iter()
                .map(|(i, a, b, l)| (i.to_string(), a.to_string(), b.to_string(), l.clone())),
        )
        .unwrap()
    }

    fn sunset(x: [i64; 3]) -> PolarizedMetricGraph {
        g(
            &[("a", 0), ("b", 0)],
            &[
                ("e1", "a", "b", int(x[0])),
                ("e2", "a", "b", int(x[1])),
                ("e3", "a", "b", int(x[2])),
            ],
        )
    }

    fn type2(m: Rational) -> PolarizedMetricGraph {
        g(&[("a", 1), ("b", 1)], &[("e", "a", "b", m)])
    }

    fn type3(m: Rational) -> PolarizedMetricGraph {
        g(&[("v", 1)], &[("e", "v", "v", m)])
    }

    fn type5(m1: Rational, m2: Rational) -> PolarizedMetricGraph {
        g(&[("v", 0)], &[("e1", "v", "v", m1), ("e2", "v", "v", m2)])
    }

    #[test]
    fn epsilon_examples() {
        let m = ratio(7, 3);
        assert_eq!(epsilon(&type2(m.clone())).unwrap(), m);
        assert_eq!(epsilon(&type3(m.clone())).unwrap(), &m / int(6));
        assert_eq!(epsilon(&type5(int(2), int(5))).unwrap(), ratio(7, 6));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&sunset([1, 1, 1])).unwrap(), ratio(1, 9));
        assert_eq!(phi(&type2(int(4))).unwrap(), int(4));
        assert_eq!(phi(&type3(int(4))).unwrap(), ratio(1, 3));
        assert_eq!(phi(&g(&[("v", 2)], &[])).unwrap(), int(0));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&type2(int(1))).unwrap(), ratio(7, 5));
        assert_eq!(psi(&type3(int(1))).unwrap(), ratio(1, 5));
        assert_eq!(psi(&g(&[("v", 2)], &[])).unwrap(), int(0));
    }

    #[test]
    fn report_examples() {
        let r = report(&sunset([1, 1, 1])).unwrap();
        assert_eq!((r.h, r.b1), (2, 2));
        assert_eq!(r.delta.exact, int(3));
        assert_eq!(r.phi.exact, ratio(1, 9));
        assert_eq!(r.phi.decimal, "0.111111111111");
        assert!(r.crosschecks.all());
        assert!(r.stable);

        let vi = g(
            &[("a", 0), ("b", 0)],
            &[
                ("e1", "a", "b", int(2)),
                ("e2", "a", "a", int(3)),
                ("e3", "b", "b", int(5)),
            ],
        );
        assert_eq!(report(&vi).unwrap().phi.exact, int(2) + ratio(8, 12));

        let iv = g(
            &[("a", 1), ("b", 0)],
            &[("e1", "a", "b", int(3)), ("e2", "b", "b", int(7))],
        );
        assert_eq!(report(&iv).unwrap().phi.exact, int(3) + ratio(7, 12));

        let json = serde_json::to_string(&report(&type2(int(1))).unwrap()).unwrap();
        assert!(json.contains(r#""phi":{"exact":"1","decimal":"1"}"#));
        assert!(json.contains(r#""r":"inf""#));
    }

    #[test]
    fn genus_one_is_reported() {
        let c = g(&[("v", 0)], &[("e", "v", "v", int(1))]);
        let r = report(&c).unwrap();
        assert_eq!(r.h, 1);
        assert!(r.crosschecks.all());
    }
}
