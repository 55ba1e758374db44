//! The aggregated invariant suites behind the `selftest` command.

use rayon::prelude::*;
use transverse_hopf::coeff_ring::{self, Idx};
use transverse_hopf::cyclic_module::{self, CoarseAlgebra, CoarseInstance, HopfInstance};
use transverse_hopf::hopf_core::{self, HElement};
use transverse_hopf::hopf_structure::{self, TensorElement};
use transverse_hopf::suite::SuiteReport;
use transverse_hopf::{jet_model, van_est, weil_complex, Scalar};

use crate::report::RunConfig;

type SuiteJob = Box<dyn Fn() -> SuiteReport + Send + Sync>;

/// `b` and `B` on the known cocycles: `δ₁` for `n = 1`, and `B(δ^i_{jk}) = 0`.
pub fn known_cocycles(n: Idx) -> SuiteReport {
    let mut report = SuiteReport::new(&format!("known cocycles n={n}"));
    let inst = HopfInstance::new(n);
    if n == 1 {
        let verdict = cyclic_module::cocycle_check(&inst, &cyclic_module::delta_cochain(1, 1, 1, 1));
        report.single("delta_1 is a (b,B)-cocycle", verdict.is_cocycle(), &|| format!("{verdict:?}"));
    }
    let mut c = transverse_hopf::suite::Check::new("B(delta^i_jk) = 0");
    for i in 1..=n {
        for j in 1..=n {
            for k in j..=n {
                let d = TensorElement::from_element(&HElement::delta(n, i, j, k, &[]));
                let bd = cyclic_module::horizontal_b(&inst, 0, &d);
                c.record(bd.is_zero(), &|| format!("D[{i};{j},{k}]: {bd}"));
            }
        }
    }
    report.push(c);
    report
}

fn jobs(cfg: &RunConfig) -> Vec<SuiteJob> {
    let (n, samples, seed) = (cfg.n, cfg.samples, cfg.seed);
    let max_q = cfg.max_degree.min(3);
    let hopf_samples = (samples / 4).max(1);
    let mut out: Vec<SuiteJob> = vec![
        Box::new(move || coeff_ring::ring_suite(n, samples * 5, seed)),
        Box::new(move || hopf_core::confluence_suite(n, samples, 4, seed.wrapping_add(1))),
        Box::new(move || hopf_structure::axiom_suite(n, samples, 4, seed.wrapping_add(2))),
        Box::new(move || cyclic_module::cyclic_suite(&HopfInstance::new(n), max_q.min(4 - n as usize), hopf_samples, seed.wrapping_add(3))),
        Box::new(move || {
            let inst = CoarseInstance { algebra: CoarseAlgebra::dual_numbers(Scalar::from_integer(3.into())) };
            let mut r = cyclic_module::cyclic_suite(&inst, max_q, samples, seed.wrapping_add(4));
            r.extend(cyclic_module::homotopy_suite(&inst, max_q, samples, seed.wrapping_add(5)));
            r
        }),
        Box::new(move || {
            let inst = CoarseInstance { algebra: CoarseAlgebra::matrices_2x2() };
            let mut r = cyclic_module::cyclic_suite(&inst, max_q, samples, seed.wrapping_add(6));
            r.extend(cyclic_module::homotopy_suite(&inst, max_q, samples, seed.wrapping_add(7)));
            r
        }),
        Box::new(move || known_cocycles(n)),
        Box::new(move || weil_complex::weil_suite(n.max(3), samples, seed.wrapping_add(8))),
        Box::new(|| van_est::van_est_suite(2)),
        Box::new(move || jet_model::jet_suite(n, 4, samples, seed.wrapping_add(9))),
    ];
    if n >= 2 {
        out.push(Box::new(move || van_est::consistency_suite(n, 1, 3)));
    }
    out
}

/// Runs every suite for the configuration, in a fixed order.
pub fn selftest(cfg: &RunConfig) -> Vec<SuiteReport> {
    jobs(cfg).par_iter().map(|job| job()).collect()
}
