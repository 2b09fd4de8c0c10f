//! Recovery of `φ` as a rational function of the edge lengths from exact
//! point evaluations.
//!
//! The fit first looks for the smallest degrees `(k + 1, k)` at which
//! `P − φ·Q = 0` has a one-dimensional solution space on random integer
//! samples; that solution is the reduced form of `φ`. It is then lifted to
//! the degrees `(2b₁ + 1, 2b₁)` by multiplying numerator and denominator by
//! the same factor, preferably so that the denominator becomes the square of
//! the Kirchhoff polynomial.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PolarizedMetricGraph;
use crate::invariants;
use crate::linalg;
use crate::poly::{self, homogeneous_monomials, monomial_count, Polynomial, Term};
use crate::rational::{self, int, Rational};

pub const SAMPLE_MIN: i64 = 1;
pub const SAMPLE_MAX: i64 = 97;
pub const HELD_OUT: usize = 12;
/// Largest unknown count for which the kernel at the full degrees is
/// computed as a consistency check.
pub const BOUND_KERNEL_LIMIT: u128 = 120;
const KIRCHHOFF_TREE_LIMIT: u128 = 200_000;

/// `P / Q` in the variables `x₁..x_r`, with coprime integer coefficients and
/// a positive leading denominator coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariateRationalFunction {
    variables: Vec<String>,
    numerator: Polynomial,
    denominator: Polynomial,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionJson {
    variables: Vec<String>,
    numerator: Vec<Term>,
    denominator: Vec<Term>,
}

impl MultivariateRationalFunction {
    pub fn new(variables: Vec<String>, numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        let n = variables.len();
        if numerator.nvars() != n || denominator.nvars() != n {
            return Err(Error::ValidationFailure(format!(
                "polynomials in {} and {} variables for {n} names",
                numerator.nvars(),
                denominator.nvars()
            )));
        }
        if denominator.is_zero() {
            return Err(Error::DenominatorZero);
        }
        let mut ps = [numerator, denominator];
        poly::normalize_jointly(&mut ps, 1);
        let [numerator, denominator] = ps;
        Ok(MultivariateRationalFunction {
            variables,
            numerator,
            denominator,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Homogeneous degrees of numerator and denominator; `None` for a
    /// non-homogeneous part. The zero numerator reports `None`.
    pub fn degrees(&self) -> (Option<u32>, Option<u32>) {
        (
            self.numerator.homogeneous_degree(),
            self.denominator.homogeneous_degree(),
        )
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.variables.len() {
            return Err(Error::ArityMismatch {
                tag: "rational function".into(),
                expected: self.variables.len(),
                got: x.len(),
            });
        }
        let q = self.denominator.eval(x);
        if q.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(self.numerator.eval(x) / q)
    }

    /// Equality in the function field: `P₁Q₂ = P₂Q₁` as polynomials.
    pub fn same_function(&self, o: &Self) -> bool {
        self.variables.len() == o.variables.len()
            && self.numerator.mul(&o.denominator) == o.numerator.mul(&self.denominator)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for MultivariateRationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionJson {
            variables: self.variables.clone(),
            numerator: self.numerator.to_terms(),
            denominator: self.denominator.to_terms(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultivariateRationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FunctionJson::deserialize(d)?;
        let n = j.variables.len();
        let p = Polynomial::from_term_list(n, &j.numerator).map_err(D::Error::custom)?;
        let q = Polynomial::from_term_list(n, &j.denominator).map_err(D::Error::custom)?;
        MultivariateRationalFunction::new(j.variables, p, q).map_err(D::Error::custom)
    }
}

pub fn evaluate(f: &MultivariateRationalFunction, lengths: &[Rational]) -> Result<Rational> {
    f.evaluate(lengths)
}

/// `Σ_T Π_{e ∉ T} x_e` over spanning trees `T`, or `None` when there are too
/// many edge subsets to enumerate.
pub fn kirchhoff_polynomial(g: &PolarizedMetricGraph) -> Option<Polynomial> {
    let r = g.edges().len();
    let nv = g.vertices().len();
    let candidates: Vec<usize> = (0..r).filter(|&i| !g.edges()[i].is_loop()).collect();
    let need = nv - 1;
    if need > candidates.len() || binomial(candidates.len(), need) > KIRCHHOFF_TREE_LIMIT {
        return None;
    }
    let mut out = Polynomial::zero(r);
    let mut chosen = Vec::with_capacity(need);
    let mut visit = |tree: &[usize]| {
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &e in tree {
            let [a, b] = g.edges()[e].ends;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return;
            }
            parent[ra] = rb;
        }
        let mut exps = vec![1u32; r];
        for &e in tree {
            exps[e] = 0;
        }
        out = out.add(&Polynomial::from_terms(r, [(exps, int(1))]));
    };
    fn combos(c: &[usize], start: usize, need: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if chosen.len() == need {
            f(chosen);
            return;
        }
        for i in start..c.len() {
            if c.len() - i < need - chosen.len() {
                break;
            }
            chosen.push(c[i]);
            combos(c, i + 1, need, chosen, f);
            chosen.pop();
        }
    }
    combos(&candidates, 0, need, &mut chosen, &mut visit);
    Some(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k) as u128;
    (0..k).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeAttempt {
    pub numerator_degree: u32,
    pub denominator_degree: u32,
    pub unknowns: usize,
    pub samples: usize,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundKernel {
    pub unknowns: usize,
    pub samples: usize,
    pub kernel_dim: usize,
    /// Number of monomials of degree `2b₁ − k`: the dimension expected when
    /// the reduced form has degrees `(k + 1, k)`.
    pub expected_kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeldOutSample {
    #[serde(with = "rational::serde_str_vec")]
    pub lengths: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub engine: Rational,
    #[serde(with = "rational::serde_str")]
    pub reduced: Rational,
    #[serde(with = "rational::serde_str")]
    pub full_degree: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplier {
    /// Already at the full degrees.
    None,
    /// Denominator lifted to the squared Kirchhoff polynomial.
    KirchhoffSquared,
    /// Both parts multiplied by a power of `Σ xᵢ`.
    LengthSumPower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitTranscript {
    pub seed: u64,
    pub sample_range: [i64; 2],
    pub attempts: Vec<DegreeAttempt>,
    pub full_degree_kernel: Option<BoundKernel>,
    pub held_out: Vec<HeldOutSample>,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub b1: u64,
    pub h: u64,
    /// Lowest-degree representation.
    pub reduced: MultivariateRationalFunction,
    /// Representation with numerator degree `2b₁ + 1` and denominator
    /// degree `2b₁`.
    pub full_degree: MultivariateRationalFunction,
    pub multiplier: Multiplier,
    pub transcript: FitTranscript,
}

impl FitReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fit report serializes")
    }
}

/// Distinct random integer length vectors with their exact `φ` values.
struct Sampler<'a> {
    family: &'a PolarizedMetricGraph,
    rng: ChaCha8Rng,
    seen: HashSet<Vec<i64>>,
    samples: Vec<(Vec<Rational>, Rational)>,
    capacity: u128,
}

impl<'a> Sampler<'a> {
    fn new(family: &'a PolarizedMetricGraph, seed: u64) -> Self {
        let r = family.edges().len() as u32;
        Sampler {
            family,
            rng: ChaCha8Rng::seed_from_u64(seed),
            seen: HashSet::new(),
            samples: Vec::new(),
            capacity: ((SAMPLE_MAX - SAMPLE_MIN + 1) as u128).saturating_pow(r),
        }
    }

    fn draw(&mut self) -> Result<Option<(Vec<Rational>, Rational)>> {
        if self.seen.len() as u128 >= self.capacity {
            return Ok(None);
        }
        let r = self.family.edges().len();
        loop {
            let x: Vec<i64> = (0..r).map(|_| self.rng.gen_range(SAMPLE_MIN..=SAMPLE_MAX)).collect();
            if self.seen.insert(x.clone()) {
                let x: Vec<Rational> = x.into_iter().map(int).collect();
                let phi = invariants::phi(&self.family.with_lengths(&x)?)?;
                return Ok(Some((x, phi)));
            }
        }
    }

    /// The first `n` fitting samples, or fewer if the sample space is
    /// exhausted.
    fn first(&mut self, n: usize) -> Result<&[(Vec<Rational>, Rational)]> {
        while self.samples.len() < n {
            match self.draw()? {
                Some(s) => self.samples.push(s),
                None => break,
            }
        }
        Ok(&self.samples[..n.min(self.samples.len())])
    }
}

fn system_kernel(
    samples: &[(Vec<Rational>, Rational)],
    pm: &[Vec<u32>],
    qm: &[Vec<u32>],
) -> Vec<Vec<Rational>> {
    let r = samples.first().map_or(0, |s| s.0.len());
    let mono = |e: &Vec<u32>, x: &[Rational]| Polynomial::from_terms(r, [(e.clone(), int(1))]).eval(x);
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(x, phi)| {
            pm.iter()
                .map(|e| mono(e, x))
                .chain(qm.iter().map(|e| -(phi * mono(e, x))))
                .collect()
        })
        .collect();
    linalg::kernel(&rows, pm.len() + qm.len())
}

fn split_vector(v: &[Rational], pm: &[Vec<u32>], qm: &[Vec<u32>], r: usize) -> (Polynomial, Polynomial) {
    let p = Polynomial::from_terms(r, pm.iter().cloned().zip(v[..pm.len()].iter().cloned()));
    let q = Polynomial::from_terms(r, qm.iter().cloned().zip(v[pm.len()..].iter().cloned()));
    (p, q)
}

/// Fits `φ` on the family of metrics carried by the combinatorial type of
/// `family`; its current edge lengths are ignored. Variables follow the
/// graph's edge order.
pub fn fit_phi(family: &PolarizedMetricGraph, seed: u64) -> Result<FitReport> {
    family.require_valid()?;
    let (b1, h) = family.genus()?;
    let r = family.edges().len();
    let names: Vec<String> = family.edges().iter().map(|e| e.id.clone()).collect();
    let top = 2 * b1 as u32;
    let mut sampler = Sampler::new(family, seed);
    let mut attempts = Vec::new();

    let mut found = None;
    for k in 0..=top {
        let pm = homogeneous_monomials(r, k + 1);
        let qm = homogeneous_monomials(r, k);
        let unknowns = pm.len() + qm.len();
        let samples = sampler.first(2 * unknowns)?;
        let ker = system_kernel(samples, &pm, &qm);
        attempts.push(DegreeAttempt {
            numerator_degree: k + 1,
            denominator_degree: k,
            unknowns,
            samples: samples.len(),
            kernel_dim: ker.len(),
        });
        match ker.len() {
            0 => continue,
            1 => {
                found = Some((k, split_vector(&ker[0], &pm, &qm, r)));
                break;
            }
            d => return Err(Error::RankDeficient { kernel_dim: d }),
        }
    }
    let (k, (p, q)) = found.ok_or(Error::RankDeficient { kernel_dim: 0 })?;
    let reduced = MultivariateRationalFunction::new(names.clone(), p, q)?;

    let lift = top - k;
    let (multiplier, factor) = if lift == 0 {
        (Multiplier::None, Polynomial::one(r))
    } else {
        let via_kirchhoff = kirchhoff_polynomial(family)
            .and_then(|psi| psi.pow(2).div_exact(reduced.denominator()))
            .filter(|s| s.homogeneous_degree() == Some(lift));
        match via_kirchhoff {
            Some(s) => (Multiplier::KirchhoffSquared, s),
            None => {
                let sum = (0..r).fold(Polynomial::zero(r), |acc, i| acc.add(&Polynomial::variable(r, i)));
                (Multiplier::LengthSumPower, sum.pow(lift))
            }
        }
    };
    let full_degree = MultivariateRationalFunction::new(
        names,
        reduced.numerator().mul(&factor),
        reduced.denominator().mul(&factor),
    )?;

    let full_degree_kernel = {
        let (np, nq) = (monomial_count(r, top + 1), monomial_count(r, top));
        if np + nq <= BOUND_KERNEL_LIMIT {
            let pm = homogeneous_monomials(r, top + 1);
            let qm = homogeneous_monomials(r, top);
            let unknowns = pm.len() + qm.len();
            let samples = sampler.first(2 * unknowns)?;
            let ker = system_kernel(samples, &pm, &qm);
            Some(BoundKernel {
                unknowns,
                samples: samples.len(),
                kernel_dim: ker.len(),
                expected_kernel_dim: monomial_count(r, lift) as usize,
            })
        } else {
            None
        }
    };

    // held-out points are drawn after every fitting sample
    let used = sampler.samples.len();
    let _ = sampler.first(used + HELD_OUT)?;
    let mut held_out = Vec::new();
    for (x, engine) in &sampler.samples[used..] {
        let a = reduced.evaluate(x)?;
        let b = full_degree.evaluate(x)?;
        held_out.push(HeldOutSample {
            lengths: x.clone(),
            equal: &a == engine && &b == engine,
            engine: engine.clone(),
            reduced: a,
            full_degree: b,
        });
    }
    if let Some(bad) = held_out.iter().find(|s| !s.equal) {
        return Err(Error::ValidationFailure(format!(
            "held-out sample {:?}: engine {} but fit gives {}",
            bad.lengths.iter().map(rational::format).collect::<Vec<_>>(),
            rational::format(&bad.engine),
            rational::format(&bad.reduced)
        )));
    }
    let kernel_ok = full_degree_kernel
        .as_ref()
        .map_or(true, |b| b.kernel_dim == b.expected_kernel_dim);
    let validated = kernel_ok && (held_out.len() >= 10 || (r == 0 && !held_out.is_empty()) || used as u128 >= sampler.capacity);
    Ok(FitReport {
        b1,
        h,
        reduced,
        full_degree,
        multiplier,
        transcript: FitTranscript {
            seed,
            sample_range: [SAMPLE_MIN, SAMPLE_MAX],
            attempts,
            full_degree_kernel,
            held_out,
            validated,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus2::{build, Genus2Type};
    use crate::rational::ratio;

    fn family(t: Genus2Type) -> PolarizedMetricGraph {
        build(t, &vec![int(1); t.arity()]).unwrap()
    }

    fn poly(r: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn kirchhoff_examples() {
        let k = kirchhoff_polynomial(&family(Genus2Type::I)).unwrap();
        assert_eq!(k, poly(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]));
        let k = kirchhoff_polynomial(&family(Genus2Type::VI)).unwrap();
        assert_eq!(k, poly(3, &[(&[0, 1, 1], 1)]));
        let k = kirchhoff_polynomial(&family(Genus2Type::II)).unwrap();
        assert_eq!(k, Polynomial::one(1));
    }

    #[test]
    fn sunset_fit() {
        let fit = fit_phi(&family(Genus2Type::I), 7).unwrap();
        let q = fit.reduced.denominator();
        assert_eq!(
            *q,
            poly(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]).scale(&int(12))
        );
        assert_eq!(fit.reduced.degrees(), (Some(3), Some(2)));
        assert_eq!(fit.full_degree.degrees(), (Some(5), Some(4)));
        assert_eq!(fit.multiplier, Multiplier::KirchhoffSquared);
        assert_eq!(fit.reduced.evaluate(&[int(1), int(1), int(1)]).unwrap(), ratio(1, 9));
        assert!(fit.reduced.same_function(&fit.full_degree));
        let k = fit.transcript.full_degree_kernel.clone().unwrap();
        assert_eq!((k.kernel_dim, k.expected_kernel_dim), (6, 6));
        assert!(fit.transcript.validated);
        assert!(fit.transcript.held_out.len() >= 10);
    }

    #[test]
    fn linear_fits() {
        let fit = fit_phi(&family(Genus2Type::VI), 1).unwrap();
        assert_eq!(*fit.reduced.numerator(), poly(3, &[(&[1, 0, 0], 12), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]));
        assert_eq!(*fit.reduced.denominator(), poly(3, &[(&[0, 0, 0], 12)]));
        assert_eq!(fit.full_degree.degrees(), (Some(5), Some(4)));

        let fit = fit_phi(&family(Genus2Type::II), 1).unwrap();
        assert_eq!(*fit.reduced.numerator(), poly(1, &[(&[1], 1)]));
        assert_eq!(*fit.reduced.denominator(), Polynomial::one(1));
        assert_eq!(fit.multiplier, Multiplier::None);

        let fit = fit_phi(&family(Genus2Type::V), 3).unwrap();
        assert_eq!(fit.reduced.evaluate(&[int(1), int(2)]).unwrap(), ratio(1, 4));
    }

    #[test]
    fn homogeneity_and_determinism() {
        let fit = fit_phi(&family(Genus2Type::I), 11).unwrap();
        let x = [ratio(2, 3), int(5), ratio(7, 2)];
        let lam = ratio(9, 4);
        let lx: Vec<Rational> = x.iter().map(|v| v * &lam).collect();
        assert_eq!(fit.full_degree.evaluate(&lx).unwrap(), &lam * fit.full_degree.evaluate(&x).unwrap());
        assert_eq!(fit.to_json(), fit_phi(&family(Genus2Type::I), 11).unwrap().to_json());
    }

    #[test]
    fn evaluation_errors_and_json() {
        let f = MultivariateRationalFunction::new(
            vec!["x".into(), "y".into()],
            poly(2, &[(&[1, 0], 2)]),
            poly(2, &[(&[1, 0], 2), (&[0, 1], -2)]),
        )
        .unwrap();
        assert_eq!(*f.numerator(), poly(2, &[(&[1, 0], 1)]));
        assert_eq!(evaluate(&f, &[int(3), int(3)]), Err(Error::DenominatorZero));
        assert!(matches!(f.evaluate(&[int(3)]), Err(Error::ArityMismatch { .. })));
        let s = f.to_json();
        assert_eq!(
            s,
            r#"{"variables":["x","y"],"numerator":[{"exponents":[1,0],"coefficient":"1"}],"denominator":[{"exponents":[1,0],"coefficient":"1"},{"exponents":[0,1],"coefficient":"-1"}]}"#
        );
        assert_eq!(MultivariateRationalFunction::from_json(&s).unwrap(), f);
    }
}
