//! Series-level identities as checkable predicates, each returning a serializable [`Verdict`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::FreeComplex;
use crate::error::Result;
use crate::field::Field;
use crate::homological::{tor_with, HomologyReport};
use crate::io::{complex_json, fingerprint, module_json, ring_json};
use crate::module::PresentedModule;
use crate::powers::{symmetric_square_complex, SquarePowers};
use crate::resolution::Resolution;
use crate::series::{LaurentPoly, TwoVariableSeries};

pub const WINDOW_CONDITIONAL: &str = "window-conditional";
pub const INAPPLICABLE: &str = "inapplicable";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Verdict {
    pub identity: String,
    pub inputs_hash: String,
    /// Largest degree compared (t-degree, or homological degree for two-variable series).
    pub window: i32,
    pub pass: bool,
    pub witness_degree_on_fail: Option<i32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn new(identity: &str, inputs: &Value, window: i32) -> Self {
        Verdict {
            identity: identity.into(),
            inputs_hash: fingerprint(inputs),
            window,
            pass: true,
            witness_degree_on_fail: None,
            tags: Vec::new(),
            detail: None,
        }
    }

    fn fail_at(&mut self, degree: i32) {
        self.pass = false;
        self.witness_degree_on_fail = Some(degree);
    }

    pub fn is_applicable(&self) -> bool {
        !self.tags.iter().any(|t| t == INAPPLICABLE)
    }
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!(p.to_string())
}

/// Lowest exponent where `a` and `b` differ among exponents `<= max`.
fn first_mismatch(a: &LaurentPoly, b: &LaurentPoly, max: i32) -> Option<i32> {
    let lo = match (a.low(), b.low()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return None,
    };
    (lo..=max).find(|&e| a.coeff(e) != b.coeff(e))
}

/// `H_M(t) = H_R(t) P_M(t, -1)` through t-degree `t_0 + n`, where `t_0` is the least generator degree of `M`
/// and the resolution is computed to homological degree `n`.
pub fn check_hilbert_poincare<K: Field>(m: &PresentedModule<K>, n: usize) -> Result<Verdict> {
    let ring = m.ring();
    let h_r = ring.hilbert_polynomial()?;
    let mut res = Resolution::new(m);
    let betti = res.betti_table(n);
    let t0 = res.module(0).iter().copied().min().unwrap_or(0);
    let window = t0 + n as i32;
    let inputs = json!({"ring": ring_json(ring), "module": module_json(m), "n": n});
    let mut v = Verdict::new("hilbert-poincare", &inputs, window);
    let lhs = m.hilbert_polynomial();
    let rhs = h_r.mul(&betti.alternating_sum());
    if let Some(e) = first_mismatch(&lhs, &rhs, window) {
        v.fail_at(e);
        v.detail = Some(format!("H_M = {lhs}, H_R P_M(t,-1) = {rhs}"));
    }
    Ok(v)
}

/// `2 P_{S²X}(t,z) = P_X(t,z)² + P_X(t²,-z²)` on homological degrees `<= window`.
pub fn check_poincare_s2<K: Field>(x: &FreeComplex<K>, window: i32) -> Result<Verdict> {
    let (_, px) = x.poincare_table()?;
    let s2 = symmetric_square_complex(x)?;
    let (_, ps) = s2.complex.poincare_table()?;
    let inputs = json!({"complex": complex_json(x), "window": window});
    let mut v = Verdict::new("poincare-s2", &inputs, window);
    let p = TwoVariableSeries::from_terms(window, px.terms());
    let lhs = TwoVariableSeries::from_terms(window, ps.terms()).scale(2);
    let rhs = p.mul(&p).add(&p.substitute_square_negated());
    if let Some((i, j)) = lhs.first_difference(&rhs) {
        v.fail_at(j);
        v.detail = Some(format!("coefficient of t^{j} z^{i}: {} vs {}", lhs.coeff(i, j), rhs.coeff(i, j)));
    }
    Ok(v)
}

/// The two Hilbert series formulas for `S²M` and `∧²M` under Tor vanishing, with the data used.
#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub verdict: Verdict,
    pub tor: HomologyReport,
    pub sym2: LaurentPoly,
    pub wedge2: LaurentPoly,
    /// `H_M² H_R^{-1} + H_M(t²) H_R(t) H_R(t²)^{-1}`, truncated at the window.
    pub twice_sym2_formula: LaurentPoly,
    /// `H_M² H_R^{-1} - H_M(t²) H_R(t) H_R(t²)^{-1}`, truncated at the window.
    pub twice_wedge2_formula: LaurentPoly,
}

/// Checks `2H_{S²M} = H_M²/H_R + H_M(t²)H_R(t)/H_R(t²)` and the `∧²` companion with a minus sign.
///
/// The hypothesis `Tor_i(M,M) = 0` for all `i > 0` is tested on `1..=n` only; when it fails there the
/// verdict is tagged inapplicable instead of failed.
pub fn check_lemma_hilbert_formulas<K: Field>(m: &PresentedModule<K>, n: usize) -> Result<LemmaCheck> {
    let ring = m.ring();
    ring.field().require_odd_characteristic()?;
    let h_r = ring.hilbert_polynomial()?;
    let s = ring.top_degree().unwrap_or(0);
    let min = m.minimal_presentation();
    let top_gen = min.targets().iter().copied().max().unwrap_or(0);
    let window = 2 * (top_gen + s) + 2;
    let inputs = json!({"ring": ring_json(ring), "module": module_json(m), "n": n});
    let mut v = Verdict::new("lemma-hilbert-formulas", &inputs, window);
    v.tags.push(WINDOW_CONDITIONAL.into());

    let mut res = Resolution::new(&min);
    let tor = tor_with(&mut res, &min.structure(), 1, n as i32, true);
    let sq = SquarePowers::new(&min);
    let sym2 = sq.sym2.hilbert_polynomial();
    let wedge2 = sq.wedge2.hilbert_polynomial();

    let h_m = min.hilbert_polynomial();
    let low = 2 * h_m.low().unwrap_or(0);
    let inv = h_r.inverse_series(window - low)?;
    let inv_sq = h_r.substitute_power(2).inverse_series(window - low)?;
    let a = h_m.mul(&h_m).mul_truncated(&inv, window);
    let b = h_m.substitute_power(2).mul(&h_r).mul_truncated(&inv_sq, window);
    let twice_sym2_formula = a.add(&b).truncate(window);
    let twice_wedge2_formula = a.sub(&b).truncate(window);

    if !tor.vanishes() {
        v.pass = false;
        v.tags.push(INAPPLICABLE.into());
        v.detail = Some(format!("Tor_{} nonzero", tor.first_nonzero().unwrap_or(0)));
    } else {
        let sym_miss = first_mismatch(&sym2.scale(2), &twice_sym2_formula, window);
        let wedge_miss = first_mismatch(&wedge2.scale(2), &twice_wedge2_formula, window);
        if let Some(e) = [sym_miss, wedge_miss].into_iter().flatten().min() {
            v.fail_at(e);
            v.detail = Some(format!("H_S2 = {sym2}, H_wedge2 = {wedge2}"));
        }
    }
    Ok(LemmaCheck {
        verdict: v,
        tor,
        sym2,
        wedge2,
        twice_sym2_formula,
        twice_wedge2_formula,
    })
}

/// `ε_R(t) ε_R(t²) ε_{∧²}(t) = ε_M(t)² ε_R(t²) - ε_M(t²) ε_R(t)²` solved for `ε_{∧²}`.
#[derive(Debug, Clone)]
pub struct EpsilonCheck {
    pub verdict: Verdict,
    pub rhs: LaurentPoly,
    pub rhs_at_one: i128,
    /// `None` when the right side is not divisible by `ε_R(t) ε_R(t²)`.
    pub wedge: Option<LaurentPoly>,
    pub multiplicities_agree: bool,
}

/// Passes unless `ε_M(1) = ε_R(1)` and the right side fails to vanish at `t = 1`.
pub fn check_epsilon_identity(eps_r: &LaurentPoly, eps_m: &LaurentPoly) -> EpsilonCheck {
    let inputs = json!({"eps-r": poly_json(eps_r), "eps-m": poly_json(eps_m)});
    let r2 = eps_r.substitute_power(2);
    let rhs = eps_m
        .mul(eps_m)
        .mul(&r2)
        .sub(&eps_m.substitute_power(2).mul(&eps_r.mul(eps_r)));
    let wedge = rhs.exact_div(&eps_r.mul(&r2));
    let rhs_at_one = rhs.eval_at_one();
    let multiplicities_agree = eps_m.eval_at_one() == eps_r.eval_at_one();
    let mut v = Verdict::new("epsilon", &inputs, 1);
    if multiplicities_agree && rhs_at_one != 0 {
        v.fail_at(0);
    }
    v.detail = Some(format!("RHS = {rhs}, RHS(1) = {rhs_at_one}"));
    EpsilonCheck {
        verdict: v,
        rhs,
        rhs_at_one,
        wedge,
        multiplicities_agree,
    }
}

/// `H_R(t^{-1}) H_R(t) = H_C(t^{-1}) H_C(t)` for Artinian Hilbert polynomials.
#[derive(Debug, Clone)]
pub struct Ab97Check {
    pub verdict: Verdict,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    /// `e_R(C) = e(R)` read off at `t = 1`; only meaningful when the identity holds.
    pub multiplicities_equal: bool,
}

pub fn check_ab97(h_r: &LaurentPoly, h_c: &LaurentPoly) -> Ab97Check {
    let inputs = json!({"h-r": poly_json(h_r), "h-c": poly_json(h_c)});
    let lhs = h_r.substitute_power(-1).mul(h_r);
    let rhs = h_c.substitute_power(-1).mul(h_c);
    let window = lhs.high().max(rhs.high()).unwrap_or(0);
    let mut v = Verdict::new("ab97", &inputs, window);
    if let Some(e) = first_mismatch(&lhs, &rhs, window) {
        v.fail_at(e);
    }
    v.detail = Some(format!("{lhs} vs {rhs}"));
    let multiplicities_equal = v.pass && h_r.eval_at_one() == h_c.eval_at_one();
    Ab97Check {
        verdict: v,
        lhs,
        rhs,
        multiplicities_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Variables;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn ring(rels: &[&str]) -> Arc<Ring<PrimeField>> {
        Arc::new(Ring::parse(PrimeField::new(101).unwrap(), Variables::standard(&["x", "y"]), rels).unwrap())
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn hilbert_poincare_examples() {
        let e = ring(&["x^2", "y^2"]);
        let v = check_hilbert_poincare(&PresentedModule::residue_field(e.clone()), 4).unwrap();
        assert!(v.pass);
        assert_eq!(v.window, 4);
        let v = check_hilbert_poincare(&PresentedModule::cyclic(e.clone(), &["x"]).unwrap(), 5).unwrap();
        assert!(v.pass);
        let v = check_hilbert_poincare(&PresentedModule::free(e, &[0, 2]), 3).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn two_term_complex_formula() {
        let e = ring(&["x^2", "y^2"]);
        let phi = crate::module::GradedMatrix::parse(&e, vec![0], vec![1], &[vec!["x"]]).unwrap();
        let x = FreeComplex::two_term(e, phi);
        let v = check_poincare_s2(&x, 2).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn lemma_worked_case() {
        let e = ring(&["x^2", "y^2"]);
        let h_r = e.hilbert_polynomial().unwrap();
        let m = PresentedModule::free(e.clone(), &[1, 0]);
        let c = check_lemma_hilbert_formulas(&m, 4).unwrap();
        assert!(c.verdict.pass);
        assert_eq!(c.sym2, h_r.mul(&lp("1 + t + t^2")));
        assert_eq!(c.wedge2, h_r.mul(&lp("t")));
        let m = PresentedModule::free(e.clone(), &[1, 1]);
        let c = check_lemma_hilbert_formulas(&m, 4).unwrap();
        assert!(c.verdict.pass);
        assert_eq!(c.sym2, h_r.mul(&lp("3t^2")));
        assert_eq!(c.wedge2, h_r.mul(&lp("t^2")));
        let k = PresentedModule::residue_field(e);
        let c = check_lemma_hilbert_formulas(&k, 4).unwrap();
        assert!(!c.verdict.is_applicable());
        assert!(!c.verdict.pass);
    }

    #[test]
    fn epsilon_examples() {
        let c = check_epsilon_identity(&lp("1 + t"), &lp("1 + t"));
        assert!(c.rhs.is_zero());
        assert_eq!(c.wedge, Some(LaurentPoly::zero()));
        assert!(c.verdict.pass);
        let c = check_epsilon_identity(&lp("1 + t"), &lp("2 + t"));
        assert_eq!(c.rhs_at_one, 6);
        assert!(!c.multiplicities_agree);
    }

    #[test]
    fn ab97_examples() {
        let c = check_ab97(&lp("1 + 2t"), &lp("2 + t"));
        assert!(c.verdict.pass);
        assert_eq!(c.lhs, lp("2/t + 5 + 2t"));
        assert!(c.multiplicities_equal);
        let c = check_ab97(&lp("1 + 2t"), &lp("1"));
        assert!(!c.verdict.pass);
    }

    #[test]
    fn laurent_parsing() {
        assert_eq!(lp("2/t + 5 + 2*t").to_string(), "2t^-1 + 5 + 2t");
        assert_eq!(lp("t^-2 - 3t^-1"), LaurentPoly::new(-2, vec![1, -3]));
        assert_eq!(lp("1 - 1"), LaurentPoly::zero());
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn verdicts_serialize_in_kebab_case() {
        let c = check_ab97(&lp("1"), &lp("1"));
        let v = serde_json::to_value(&c.verdict).unwrap();
        assert!(v.get("inputs-hash").is_some());
        assert!(v.get("witness-degree-on-fail").unwrap().is_null());
    }
}
