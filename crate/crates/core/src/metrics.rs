//! Temporal-correlation quantifiers of a process tensor and the bounds that
//! relate them.
//!
//! With `S_x` the entropy of the marginal on slots `x`, `S_j` that of the
//! step pair `(i_{j-1}, o_j)` and `S_{1:n}` that of the whole Choi state:
//!
//! * total correlations `I = Σ_j (S_{i_{j-1}} + S_{o_j}) − S_{1:n}`
//! * Markovian correlations of step `j`, `M_j = S_{i_{j-1}} + S_{o_j} − S_j`
//! * non-Markovian correlations `N = Σ_j S_j − S_{1:n}`
//!
//! so that `I = M + N` with `M = Σ_j M_j`. All values are in nats.

use serde::Serialize;

use crate::linalg::entropy::{entropy_with, relative_entropy_with};
use crate::linalg::{DensityMatrix, RelativeEntropy};
use crate::process::{input_slot, output_slot, ProcessTensor};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub n: usize,
    pub d: usize,
    /// Total correlations `I`.
    #[serde(rename = "I")]
    pub total: f64,
    /// `M_1, …, M_n`.
    #[serde(rename = "M_list")]
    pub markovian: Vec<f64>,
    /// `M = Σ_j M_j`.
    #[serde(rename = "M")]
    pub markovian_total: f64,
    /// `N`.
    #[serde(rename = "N")]
    pub non_markovian: f64,
    /// `M̄_j = 2 ln d − M_j`, the information lost to the environment at
    /// step `j`.
    #[serde(rename = "M_bar_list")]
    pub complements: Vec<f64>,
    /// `|I − (M + N)|`.
    pub additivity_residual: f64,
}

impl CorrelationReport {
    pub fn ln_d(&self) -> f64 {
        (self.d as f64).ln()
    }
}

pub fn correlation_report(pt: &ProcessTensor) -> Result<CorrelationReport> {
    correlation_report_for_state(pt.state(), pt.steps(), pt.dim())
}

pub fn correlation_report_with(pt: &ProcessTensor, tol: &Tolerances) -> Result<CorrelationReport> {
    correlation_report_for_state_with(pt.state(), pt.steps(), pt.dim(), tol)
}

/// Same quantities for an arbitrary state on `2n` slots of dimension `d`,
/// with no causality requirement.
pub fn correlation_report_for_state(state: &DensityMatrix, n: usize, d: usize) -> Result<CorrelationReport> {
    correlation_report_for_state_with(state, n, d, &Tolerances::default())
}

pub fn correlation_report_for_state_with(
    state: &DensityMatrix,
    n: usize,
    d: usize,
    tol: &Tolerances,
) -> Result<CorrelationReport> {
    if n == 0 || state.shape().dims() != vec![d; 2 * n].as_slice() {
        return Err(Error::mismatch(format!(
            "state shape {:?} does not have {} slots of dimension {d}",
            state.shape().dims(),
            2 * n
        )));
    }
    let s_full = entropy_with(state, tol)?;
    let mut local_sum = 0.0;
    let mut pair_sum = 0.0;
    let mut markovian = Vec::with_capacity(n);
    for j in 1..=n {
        let (a, b) = (input_slot(j - 1), output_slot(j));
        let pair = state.partial_trace(&[a, b])?;
        let s_in = entropy_with(&pair.partial_trace(&[0])?, tol)?;
        let s_out = entropy_with(&pair.partial_trace(&[1])?, tol)?;
        let s_pair = entropy_with(&pair, tol)?;
        local_sum += s_in + s_out;
        pair_sum += s_pair;
        markovian.push(s_in + s_out - s_pair);
    }
    let total = local_sum - s_full;
    let non_markovian = pair_sum - s_full;
    let markovian_total: f64 = markovian.iter().sum();
    let two_ln_d = 2.0 * (d as f64).ln();
    Ok(CorrelationReport {
        n,
        d,
        total,
        complements: markovian.iter().map(|m| two_ln_d - m).collect(),
        markovian,
        markovian_total,
        non_markovian,
        additivity_residual: (total - (markovian_total + non_markovian)).abs(),
    })
}

/// `S(Υ ‖ ⊗_j Υ_j)`: relative entropy to the product of step marginals,
/// the closest Markovian Choi state. Agrees with `N` for every process.
pub fn non_markovianity_crosscheck(pt: &ProcessTensor) -> Result<RelativeEntropy> {
    non_markovianity_crosscheck_with(pt, &Tolerances::default())
}

pub fn non_markovianity_crosscheck_with(pt: &ProcessTensor, tol: &Tolerances) -> Result<RelativeEntropy> {
    non_markovianity_crosscheck_for_state_with(pt.state(), pt.steps(), pt.dim(), tol)
}

/// The relative-entropy form for an arbitrary state on `2n` slots. It equals
/// the entropy-form `N` whether or not the state is causal.
pub fn non_markovianity_crosscheck_for_state_with(
    state: &DensityMatrix,
    n: usize,
    d: usize,
    tol: &Tolerances,
) -> Result<RelativeEntropy> {
    if n == 0 || state.shape().dims() != vec![d; 2 * n].as_slice() {
        return Err(Error::mismatch(format!(
            "state shape {:?} does not have {} slots of dimension {d}",
            state.shape().dims(),
            2 * n
        )));
    }
    let mut product = state.partial_trace(&[0, 1])?;
    for j in 2..=n {
        let step = state.partial_trace(&[input_slot(j - 1), output_slot(j)])?;
        product = product.tensor(&step)?;
    }
    let product = product.reshaped(state.shape().clone())?;
    relative_entropy_with(state, &product, tol)
}

/// Signed slacks (`bound − quantity`) of every inequality. A bound holds
/// when its slack is at least `−tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundAudit {
    /// `2 Σ_{j≠k} M̄_j − N` for `k = 1..n`; needs no causal order.
    pub prop1_slack: Vec<f64>,
    /// `2 Σ_{j<k} M̄_j + Σ_{j>k} M̄_j − N` for `k = 1..n`.
    pub prop2_slack: Vec<f64>,
    /// `2(n−1) ln d − N`.
    pub thm1_slack: f64,
    /// `2n ln d − (2ⁿ−1)/(2ⁿ−2) N − M`.
    pub thm2_slack: f64,
    /// `2n ln d − N/(2ⁿ−2) − I`.
    pub thm2p_slack: f64,
    /// `(2 M̄_1 − N, M̄_2 − N)`, two-step processes only.
    pub two_step_slacks: Option<(f64, f64)>,
    pub tolerance: f64,
    pub pass: bool,
}

impl BoundAudit {
    /// Smallest slack over every bound.
    pub fn min_slack(&self) -> f64 {
        self.all_slacks().fold(f64::INFINITY, f64::min)
    }

    /// Smallest prop1 slack (the only family valid without causal order).
    pub fn prop1_min(&self) -> f64 {
        self.prop1_slack.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn prop2_min(&self) -> f64 {
        self.prop2_slack.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn all_slacks(&self) -> impl Iterator<Item = f64> + '_ {
        let two = self
            .two_step_slacks
            .map(|(a, b)| vec![a, b])
            .unwrap_or_default();
        self.prop1_slack
            .iter()
            .chain(&self.prop2_slack)
            .copied()
            .chain([self.thm1_slack, self.thm2_slack, self.thm2p_slack])
            .chain(two)
    }
}

pub fn audit_bounds(report: &CorrelationReport) -> BoundAudit {
    audit_bounds_with(report, Tolerances::default().xcheck)
}

pub fn audit_bounds_with(report: &CorrelationReport, tolerance: f64) -> BoundAudit {
    let n = report.n;
    let ln_d = report.ln_d();
    let nm = report.non_markovian;
    let bars = &report.complements;
    let bar_sum: f64 = bars.iter().sum();

    let prop1_slack = (0..n).map(|k| 2.0 * (bar_sum - bars[k]) - nm).collect();
    let prop2_slack = (0..n)
        .map(|k| {
            let before: f64 = bars[..k].iter().sum();
            let after: f64 = bars[k + 1..].iter().sum();
            2.0 * before + after - nm
        })
        .collect();
    let thm1_slack = 2.0 * (n as f64 - 1.0) * ln_d - nm;
    let ceiling = 2.0 * n as f64 * ln_d;
    // a single step has one block, so N vanishes identically and the
    // N-dependent terms (whose coefficients divide by 2ⁿ − 2 = 0) drop out
    let (thm2_slack, thm2p_slack) = if n == 1 {
        (ceiling - report.markovian_total, ceiling - report.total)
    } else {
        let pow = 2f64.powi(n as i32);
        (
            ceiling - (pow - 1.0) / (pow - 2.0) * nm - report.markovian_total,
            ceiling - nm / (pow - 2.0) - report.total,
        )
    };
    let two_step_slacks = (n == 2).then(|| (2.0 * bars[0] - nm, bars[1] - nm));

    let mut audit = BoundAudit {
        prop1_slack,
        prop2_slack,
        thm1_slack,
        thm2_slack,
        thm2p_slack,
        two_step_slacks,
        tolerance,
        pass: false,
    };
    let pass = audit.all_slacks().all(|s| s >= -tolerance);
    audit.pass = pass;
    audit
}

/// Outcome of one implication `premise ⇒ conclusion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Implication {
    /// The premise is false.
    Vacuous,
    Holds,
    Violated,
}

impl Implication {
    fn evaluate(premise: bool, conclusion: bool) -> Self {
        match (premise, conclusion) {
            (false, _) => Implication::Vacuous,
            (true, true) => Implication::Holds,
            (true, false) => Implication::Violated,
        }
    }
}

/// The two-step consequences of `N ≤ 2 M̄_1` and `N ≤ M̄_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImplicationChecks {
    /// `M_1 ≥ 2 ln d − ε ⇒ N ≤ 2ε`
    pub first_step_markovian: Implication,
    /// `M_2 ≥ 2 ln d − ε ⇒ N ≤ ε`
    pub second_step_markovian: Implication,
    /// `I ≥ 4 ln d − ε ⇒ N ≤ 2ε`
    pub high_total: Implication,
    /// `N ≥ 2 ln d − 2ε ⇒ M_1 ≤ ln d + ε, M_2 ≤ 2ε, I ≤ 3 ln d + ε`
    pub high_non_markovian: Implication,
}

impl ImplicationChecks {
    pub fn all(&self) -> [Implication; 4] {
        [
            self.first_step_markovian,
            self.second_step_markovian,
            self.high_total,
            self.high_non_markovian,
        ]
    }

    pub fn violations(&self) -> usize {
        self.all().iter().filter(|&&i| i == Implication::Violated).count()
    }
}

/// Conclusions are tested with `Tolerances::xcheck` of slack; premises are
/// taken as stated.
pub fn implication_checks(report: &CorrelationReport, epsilon: f64) -> Result<ImplicationChecks> {
    if report.n != 2 {
        return Err(Error::arg(format!(
            "implication checks are defined for two-step processes, got n = {}",
            report.n
        )));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::arg(format!("epsilon = {epsilon} must be non-negative")));
    }
    let tol = Tolerances::default().xcheck;
    let ln_d = report.ln_d();
    let (m1, m2) = (report.markovian[0], report.markovian[1]);
    let (i, n) = (report.total, report.non_markovian);
    Ok(ImplicationChecks {
        first_step_markovian: Implication::evaluate(m1 >= 2.0 * ln_d - epsilon, n <= 2.0 * epsilon + tol),
        second_step_markovian: Implication::evaluate(m2 >= 2.0 * ln_d - epsilon, n <= epsilon + tol),
        high_total: Implication::evaluate(i >= 4.0 * ln_d - epsilon, n <= 2.0 * epsilon + tol),
        high_non_markovian: Implication::evaluate(
            n >= 2.0 * ln_d - 2.0 * epsilon,
            m1 <= ln_d + epsilon + tol && m2 <= 2.0 * epsilon + tol && i <= 3.0 * ln_d + epsilon + tol,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Shape;
    use crate::process::{cnot_swap_process, nm_depolarizing_process, swap_chain_process, ProcessTensor};
    use approx::assert_abs_diff_eq;

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn identity_steps_are_fully_markovian() {
        let r = correlation_report(&nm_depolarizing_process(0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(r.total, 4.0 * LN2, epsilon = 1e-10);
        assert_abs_diff_eq!(r.markovian_total, 4.0 * LN2, epsilon = 1e-10);
        assert_abs_diff_eq!(r.non_markovian, 0.0, epsilon = 1e-10);
        let audit = audit_bounds(&r);
        assert!(audit.pass);
        // N = 0 and every M̄_j = 0: each Markovian bound is met with equality
        assert_abs_diff_eq!(audit.thm1_slack, 2.0 * LN2, epsilon = 1e-10);
        assert_abs_diff_eq!(audit.prop1_min(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn cnot_swap_slacks() {
        let r = correlation_report(&cnot_swap_process().unwrap()).unwrap();
        // M̄_1 = ln 2, M̄_2 = 2 ln 2, N = 2 ln 2: both two-step bounds are tight
        let (a, b) = audit_bounds(&r).two_step_slacks.unwrap();
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(b, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn swap_chain_saturates_theorem_one() {
        let r = correlation_report(&swap_chain_process(3, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(r.non_markovian, 4.0 * LN2, epsilon = 1e-10);
        assert_abs_diff_eq!(r.markovian_total, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(audit_bounds(&r).thm1_slack, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn crosscheck_zero_for_markov_product() {
        let a = crate::channel::depolarizing_choi(2, 0.3).unwrap().into_state();
        let b = crate::channel::depolarizing_choi(2, 0.8).unwrap().into_state();
        let state = a.tensor(&b).unwrap();
        let pt = ProcessTensor::new(state, 2, 2).unwrap();
        let rel = non_markovianity_crosscheck(&pt).unwrap().finite().unwrap();
        assert_abs_diff_eq!(rel, 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(correlation_report(&pt).unwrap().non_markovian, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn crosscheck_swap_chain() {
        let pt = swap_chain_process(2, 2).unwrap();
        let rel = non_markovianity_crosscheck(&pt).unwrap().finite().unwrap();
        assert_abs_diff_eq!(rel, 2.0 * LN2, epsilon = 1e-10);
    }

    #[test]
    fn implications_on_named_processes() {
        let r0 = correlation_report(&nm_depolarizing_process(0.0).unwrap()).unwrap();
        let checks = implication_checks(&r0, 0.01).unwrap();
        assert_eq!(checks.violations(), 0);
        assert_eq!(checks.first_step_markovian, Implication::Holds);
        assert_eq!(checks.high_non_markovian, Implication::Vacuous);

        let rc = correlation_report(&cnot_swap_process().unwrap()).unwrap();
        let checks = implication_checks(&rc, 0.01).unwrap();
        assert_eq!(checks.high_non_markovian, Implication::Holds);
        assert_eq!(checks.violations(), 0);

        let r3 = correlation_report(&swap_chain_process(3, 2).unwrap()).unwrap();
        assert!(implication_checks(&r3, 0.01).is_err());
    }

    #[test]
    fn single_step_has_no_non_markovianity() {
        let choi = crate::channel::depolarizing_choi(3, 0.4).unwrap().into_state();
        let pt = ProcessTensor::new(choi, 1, 3).unwrap();
        let r = correlation_report(&pt).unwrap();
        assert_eq!(r.non_markovian, 0.0);
        assert!(audit_bounds(&r).pass);
    }

    #[test]
    fn report_rejects_wrong_shape() {
        let s = DensityMatrix::maximally_mixed(&[2, 2, 2]).unwrap();
        assert!(correlation_report_for_state(&s, 2, 2).is_err());
        let s = s.reshaped(Shape::new(vec![2, 4]).unwrap()).unwrap();
        assert!(correlation_report_for_state(&s, 1, 2).is_err());
    }
}
