//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bifree_core::bicum::{bi_moment_sides, cumulants_from_moments, moment_table, RightOrder};
use bifree_core::bnc::{count_bnc, BncShape, Face};
use bifree_core::multfn::{convolve, pinched_convolve};
use bifree_core::ncpart::{
    enumerate_nc, kreweras, mobius_nc, unique_complement_check, NCPartition,
};
use bifree_core::oracle::{check_lemma, check_mirror, Lemma};
use bifree_core::random::{Normalization, Sampler};
use bifree_core::series::Series1;
use bifree_core::transforms::{partial_s, partial_t, Method, MultiplicativityCheck, Theorem};
use bifree_core::Limits;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn t_multiplicativity(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let check = MultiplicativityCheck::new(Theorem::T, 6, limits).unwrap();
    let mut failures = Vec::new();
    for seed in 0..20 {
        let fam = Sampler::new(1000 + seed).family(7, Normalization::RightMean);
        let report = check.run(&fam, limits).unwrap();
        if !report.passed() {
            failures.push(seed);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!(
            "20 tables, all n + m <= 6, transform and K-form, {} failing seeds, {} (limit 60 s)",
            failures.len(),
            secs(elapsed)
        ),
    )
}

/// Criteria 2 and 3 share the product convolution.
fn s_multiplicativity(limits: &Limits) -> (Outcome, Outcome) {
    let start = Instant::now();
    let check = MultiplicativityCheck::new(Theorem::S(RightOrder::B1B2), 6, limits).unwrap();
    let mut failures = 0;
    let mut witness = None;
    for seed in 0..20 {
        let fam = Sampler::new(2000 + seed).family(8, Normalization::BothMeans);
        let report = check.run(&fam, limits).unwrap();
        // n, m <= 3 lies inside n + m <= 6.
        let covered = report.checks[0]
            .cells
            .iter()
            .filter(|c| c.n <= 3 && c.m <= 3)
            .count();
        if !report.passed() || covered != 16 {
            failures += 1;
        }
        if witness.is_none() {
            let reversed = report
                .order_witness
                .expect("b1b2 check carries the reversed order");
            if let Some(cell) = reversed.first_mismatch() {
                witness = Some((seed, cell.clone()));
            }
        }
    }
    let elapsed = start.elapsed();
    let s = outcome(
        failures == 0 && elapsed < Duration::from_secs(300),
        format!(
            "20 tables, all n + m <= 6 (covers n, m <= 3), {failures} failing, {} (limit 300 s)",
            secs(elapsed)
        ),
    );
    let w = match witness {
        Some((seed, cell)) => outcome(
            true,
            format!(
                "b2b1 fails for table seed {}: z^{} w^{} gives {} vs {}",
                2000 + seed,
                cell.n,
                cell.m,
                cell.lhs,
                cell.rhs
            ),
        ),
        None => outcome(false, "no table separates b2b1 from b1b2"),
    };
    (s, w)
}

fn proposition_equivalences(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    for seed in 0..50 {
        let mut s = Sampler::new(3000 + seed);
        let d = s.pair(8, Normalization::RightMean);
        let a = partial_t(&d, Method::Analytic, limits).unwrap();
        let c = partial_t(&d, Method::Cumulant, limits).unwrap();
        if a.order() < 7 || !a.agrees_with(&c).holds() {
            bad += 1;
        }
        let d = s.pair(9, Normalization::BothMeans);
        let a = partial_s(&d, Method::Analytic, limits).unwrap();
        let c = partial_s(&d, Method::Cumulant, limits).unwrap();
        if a.order() < 7 || !a.agrees_with(&c).holds() {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!(
            "50 tables each for T and S, total order 7, {bad} disagreements, {}",
            secs(start.elapsed())
        ),
    )
}

fn lemma_suite(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut failing: Vec<String> = Vec::new();
    let mut cells = 0;
    for seed in 0..10 {
        let fam = Sampler::new(4000 + seed).family(9, Normalization::BothMeans);
        for lemma in Lemma::ALL {
            let (order, in_scope): (usize, fn(usize, usize) -> bool) = match lemma {
                Lemma::T1 | Lemma::T3 => (7, |n, m| n + 2 * m <= 8),
                Lemma::T2 => (7, |n, m| n + 2 * m - 1 <= 8),
                Lemma::S1 | Lemma::S6 => (5, |n, m| 2 * n + 2 * m <= 10),
                _ => (5, |n, m| 2 * n + 2 * m - 2 <= 10),
            };
            let check = check_lemma(lemma, &fam, order, limits).unwrap();
            let scoped = check.cells.iter().filter(|c| in_scope(c.n, c.m));
            cells += scoped.clone().count();
            if !check.passed() || scoped.clone().any(|c| !c.agrees()) {
                failing.push(format!("{} (seed {})", lemma.name(), 4000 + seed));
            }
        }
        if !check_mirror(&fam, 5, limits).unwrap().passed() {
            failing.push(format!("S4 mirror (seed {})", 4000 + seed));
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "T1-T3, S1-S6 and the S4 mirror on 10 tables, {cells} in-scope coefficients, failing: [{}], {}",
            failing.join(", "),
            secs(start.elapsed())
        ),
    )
}

fn foundational_identities(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let (mut e7, mut e8, mut e9) = (0, 0, 0);
    let mut pinched_witness = None;
    for seed in 0..50 {
        let mut s = Sampler::new(5000 + seed);
        let f = s.mult_fn_m1(8);
        let g = s.mult_fn_m1(8);
        let fg = convolve(&f, &g, limits).unwrap().phi_series();
        let pinched = pinched_convolve(&f, &g, limits).unwrap().phi_series();
        let lhs = Series1::compose(&f.phi_series(), &pinched).unwrap();
        if lhs != fg {
            e7 += 1;
        }
        let product =
            &f.phi_series().comp_inverse().unwrap() * &g.phi_series().comp_inverse().unwrap();
        if &Series1::var(8) * &fg.comp_inverse().unwrap() != product {
            e8 += 1;
        }
        let literal = &Series1::var(8) * &pinched.comp_inverse().unwrap();
        if pinched_witness.is_none() {
            if let Some(d) = (0..=8).find(|&d| literal.coeff(d) != product.coeff(d)) {
                pinched_witness = Some((5000 + seed, d));
            }
        }
        let d = s.pair(8, Normalization::None);
        let (lhs, rhs) = bi_moment_sides(&d, limits).unwrap();
        if lhs.order() < 8 || lhs != rhs {
            e9 += 1;
        }
    }
    outcome(
        e7 + e8 + e9 == 0,
        format!(
            "order 8 on 50 inputs each: composition {e7}, inverse product {e8}, bi-moment {e9} failures; \
             the inverse product taken over the pinched convolution fails{}, {}",
            match pinched_witness {
                Some((seed, d)) => format!(" (seed {seed}, z^{d})"),
                None => " nowhere".into(),
            },
            secs(start.elapsed())
        ),
    )
}

/// Restricted growth strings of length `n`.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            go(prefix, max.max(l), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        let mut prefix = vec![0];
        go(&mut prefix, 0, n, &mut out);
    }
    out
}

/// Crossing test for labels listed in circular order.
fn crosses(circular: &[usize]) -> bool {
    let n = circular.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if circular[a] != circular[c] || circular[a] == circular[b] {
                    continue;
                }
                if (c + 1..n).any(|d| circular[d] == circular[b]) {
                    return true;
                }
            }
        }
    }
    false
}

fn catalan(k: usize) -> u64 {
    (0..k as u64).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn combinatorial_ground_truth(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 1..=10 {
        let brute = set_partitions(n)
            .into_iter()
            .filter(|p| !crosses(p))
            .count() as u64;
        let listed = enumerate_nc(n, limits).unwrap().len() as u64;
        if brute != catalan(n) || listed != catalan(n) {
            problems.push(format!("NC({n})"));
        }
    }
    let mut words = 0;
    for len in 1..=10usize {
        for bits in 0..1u32 << len {
            let word: Vec<Face> = (0..len)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Face::Right
                    } else {
                        Face::Left
                    }
                })
                .collect();
            let shape = BncShape::new(word.clone()).unwrap();
            words += 1;
            if count_bnc(&shape, limits).unwrap() != catalan(len) {
                problems.push(format!("BNC({shape})"));
            }
        }
        // Independent count for the standard shapes: set partitions drawn
        // on two lines, read around the boundary.
        for n in 0..=len {
            let shape = BncShape::chi(n, len - n).unwrap();
            let order: Vec<usize> = (0..n).chain((n..len).rev()).collect();
            let brute = set_partitions(len)
                .into_iter()
                .filter(|p| !crosses(&order.iter().map(|&i| p[i]).collect::<Vec<_>>()))
                .count() as u64;
            if brute != catalan(len) || count_bnc(&shape, limits).unwrap() != brute {
                problems.push(format!("chi({n}, {})", len - n));
            }
        }
    }
    let example: NCPartition = "{1,6|2,3,4|5|7}".parse().unwrap();
    if kreweras(&example).to_string() != "{1,4,5|2|3|6,7}" {
        problems.push("Kreweras example".into());
    }
    let mut complements = 0;
    for n in 1..=8 {
        for pi in enumerate_nc(n, limits).unwrap() {
            if pi.block_count() + kreweras(&pi).block_count() != n + 1 {
                problems.push(format!("block count in NC({n})"));
            }
            if n <= 6 {
                complements += 1;
                match unique_complement_check(&pi, limits) {
                    Ok(k) if k == kreweras(&pi) => {}
                    _ => problems.push(format!("unique complement of {pi}")),
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "NC(n) n <= 10, {words} shapes of length <= 10, Kreweras example, rank sums n <= 8, {complements} complements n <= 6; problems: [{}], {}",
            problems.join(", "),
            secs(start.elapsed())
        ),
    )
}

fn mobius_correctness(limits: &Limits) -> Outcome {
    let start = Instant::now();
    let mut intervals = 0u64;
    let mut bad = 0u64;
    for n in 1..=7 {
        let all = enumerate_nc(n, limits).unwrap();
        let k = all.len();
        let leq: Vec<Vec<bool>> = all
            .iter()
            .map(|p| all.iter().map(|q| p.leq(q).unwrap()).collect())
            .collect();
        for i in 0..k {
            let mu: Vec<_> = (0..k)
                .map(|r| leq[i][r].then(|| mobius_nc(&all[i], &all[r]).unwrap()))
                .collect();
            for s in 0..k {
                if s == i || !leq[i][s] {
                    continue;
                }
                intervals += 1;
                let sum: bifree_core::Rational = (0..k)
                    .filter(|&r| leq[r][s])
                    .filter_map(|r| mu[r].clone())
                    .sum();
                if sum != bifree_core::Rational::default() {
                    bad += 1;
                }
            }
        }
    }
    let mut round_trips = 0;
    for trunc in 1..=6 {
        for seed in 0..5 {
            let d = Sampler::new(6000 + 10 * trunc as u64 + seed).pair(trunc, Normalization::None);
            let back = cumulants_from_moments(&moment_table(&d, limits).unwrap(), limits).unwrap();
            if back != d {
                bad += 1;
            }
            round_trips += 1;
        }
    }
    outcome(
        bad == 0,
        format!(
            "{intervals} proper intervals in NC(n) n <= 7, {round_trips} round trips N <= 6, {bad} failures, {}",
            secs(start.elapsed())
        ),
    )
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let mut all_passed = true;
    let mut report = |id: u32, name: &str, o: Outcome| {
        all_passed &= o.passed;
        println!(
            "{} criterion {id} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    report(1, "T-multiplicativity", t_multiplicativity(&limits));
    let (s, witness) = s_multiplicativity(&limits);
    report(2, "S-multiplicativity", s);
    report(3, "order-sensitivity witness", witness);
    report(
        4,
        "analytic and cumulant forms agree",
        proposition_equivalences(&limits),
    );
    report(5, "lemma suite", lemma_suite(&limits));
    report(
        6,
        "foundational identities",
        foundational_identities(&limits),
    );
    report(
        7,
        "combinatorial ground truth",
        combinatorial_ground_truth(&limits),
    );
    report(8, "Mobius function", mobius_correctness(&limits));
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
