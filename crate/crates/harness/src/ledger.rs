//! Numbers from the `m^3 = 0` rigidity argument, evaluated on an actual module.
//!
//! With `N = Ω¹M`, `L = Ω²M`, `b = μ(N)` and `γ = γ_R(N)`, the argument derives
//! `μ(L) = γ b`, `μ(m) = 2γ` and `r(R) = γ²` from Tor vanishing, then compares
//! `C(μ(L), 2)` with `r(R) C(b, 2)`. The record shows which of these hold for the given module;
//! when the Tor hypotheses fail they usually do not, and nothing is asserted.

use gradalg::homological::HomologyReport;
use gradalg::module::PresentedModule;
use gradalg::powers::wedge_inequality;
use gradalg::resolution::Resolution;
use gradalg::{Error, Field, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Comparison {
    fn equal(lhs: Ratio<i64>, rhs: Ratio<i64>) -> Self {
        Comparison {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct LedgerRecord {
    pub length_first_syzygy: usize,
    pub b: usize,
    pub gamma: String,
    pub mu_second_syzygy: usize,
    pub mu_max_ideal: usize,
    pub ring_type: usize,
    /// `μ(L) = γ b`.
    pub generators_of_second_syzygy: Comparison,
    /// `μ(m) = 2γ`.
    pub generators_of_max_ideal: Comparison,
    /// `r(R) = γ²`.
    pub type_of_ring: Comparison,
    /// `C(μ(L), 2) <= r(R) C(b, 2)`.
    pub wedge_inequality: Comparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tor: Option<HomologyReport>,
}

/// Ledger for a non-free `M`, reusing `res` if it already covers `F_3`.
pub fn proof_ledger_with<K: Field>(
    m: &PresentedModule<K>,
    res: &mut Resolution<K>,
    tor: Option<HomologyReport>,
) -> Result<LedgerRecord> {
    let ring = m.ring().clone();
    ring.require_artinian()?;
    if m.is_free() {
        return Err(Error::NotApplicable("the ledger needs a non-free module".into()));
    }
    let n1 = PresentedModule::from_matrix(ring.clone(), res.differential(2).clone());
    let b = res.module(1).len();
    let mu_l = res.module(2).len();
    let length = n1.length();
    let gamma = Ratio::new(length as i64, b as i64) - 1;
    let mu_m = PresentedModule::maximal_ideal(ring.clone()).mu();
    let r = ring.socle_dim()?;
    let as_ratio = |n: usize| Ratio::from_integer(n as i64);
    let (lhs, rhs, holds) = wedge_inequality(mu_l, r, b);
    Ok(LedgerRecord {
        length_first_syzygy: length,
        b,
        gamma: gamma.to_string(),
        mu_second_syzygy: mu_l,
        mu_max_ideal: mu_m,
        ring_type: r,
        generators_of_second_syzygy: Comparison::equal(as_ratio(mu_l), gamma * as_ratio(b)),
        generators_of_max_ideal: Comparison::equal(as_ratio(mu_m), gamma * 2),
        type_of_ring: Comparison::equal(as_ratio(r), gamma * gamma),
        wedge_inequality: Comparison {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds,
        },
        tor,
    })
}

pub fn proof_ledger<K: Field>(m: &PresentedModule<K>) -> Result<LedgerRecord> {
    let min = m.minimal_presentation();
    let mut res = Resolution::new(&min);
    proof_ledger_with(&min, &mut res, None)
}
