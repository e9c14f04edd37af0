use jointlab::experiments::{run, Experiment, ExperimentConfig};
use jointlab::gen::gnm;
use jointlab::joint::peel_reduction;
use jointlab::turan::turan_number;

fn main() {
    let t0 = std::time::Instant::now();
    let m = turan_number(300, 2).unwrap() + 1;
    let mut cases = [0usize; 2];
    let mut min_nprime = usize::MAX;
    let mut ks = Vec::new();
    for seed in 1..=100u64 {
        let g = gnm(300, m, seed).unwrap();
        let out = peel_reduction(&g, 2).unwrap();
        let check = out.verify();
        ks.push(out.k);
        match out.case {
            jointlab::joint::ReductionCase::MinDegree => cases[0] += 1,
            jointlab::joint::ReductionCase::Density => cases[1] += 1,
        }
        min_nprime = min_nprime.min(out.n_prime);
        if !check.order_ok || !check.property_ok {
            println!(
                "seed {} FAIL: case {} k={} n'={} order_ok={} property_ok={}",
                seed, out.case, out.k, out.n_prime, check.order_ok, check.property_ok
            );
        }
    }
    ks.sort_unstable();
    println!(
        "reduce: min_degree_cases={} density_cases={} min_nprime={} k_range=[{},{}] median_k={} ({:?})",
        cases[0], cases[1], min_nprime, ks[0], ks[99], ks[50], t0.elapsed()
    );

    let t1 = std::time::Instant::now();
    let mut cfg = ExperimentConfig::new(Experiment::VerifyTurj);
    cfg.r = 2;
    cfg.n = 300;
    cfg.seeds = 100;
    cfg.base_seed = 1;
    let rep = run(&cfg).unwrap();
    println!("verify-turj passed={} ({:?})", rep.passed, t1.elapsed());

    let t2 = std::time::Instant::now();
    let mut cfg = ExperimentConfig::new(Experiment::VerifyStability);
    cfg.r = 2;
    cfg.n = 300;
    cfg.seeds = 100;
    cfg.base_seed = 1;
    let rep = run(&cfg).unwrap();
    println!("verify-stability passed={} ({:?})", rep.passed, t2.elapsed());
    for row in rep.rows.iter().take(6) {
        println!("  {:?}", row);
    }

    let t3 = std::time::Instant::now();
    let mut cfg = ExperimentConfig::new(Experiment::TightnessScan);
    let rep = run(&cfg).unwrap();
    println!("tightness passed={} rows={} ({:?})", rep.passed, rep.rows.len(), t3.elapsed());
}
