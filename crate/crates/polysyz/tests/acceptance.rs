//! Acceptance suite: every release criterion runs here, in order, and each
//! prints one pass/fail line. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! All criteria are exact (integer or verdict equality); there are no
//! tolerances to tune. The chain-space instances evaluated along the way are
//! recorded so the meta-bound (criterion 7) really ranges over all of them.

use num_rational::Rational64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use polysyz::chainspace::{
    chambers, sweep, ChainSpaceParams, LengthVector, SyzygyReport,
};
use polysyz::homology::{homological_dimension, syzygy_order, SyzygyOrder};
use polysyz::koszul::{koszul_differential, koszul_image_presentation};
use polysyz::module::generic_rank;
use polysyz::subset::{all_subsets, subsets_of_size};

struct Recorded {
    label: String,
    r: usize,
    order: SyzygyOrder,
    free: bool,
}

struct Suite {
    failures: Vec<String>,
    instances: Vec<Recorded>,
}

impl Suite {
    fn criterion(&mut self, id: &str, errors: Vec<String>) {
        if errors.is_empty() {
            println!("criterion {id}: PASS");
        } else {
            println!("criterion {id}: FAIL ({} problem(s))", errors.len());
            for e in &errors {
                println!("    {e}");
            }
            self.failures
                .push(format!("criterion {id}: {}", errors.join("; ")));
        }
    }

    fn record(&mut self, label: impl Into<String>, report: &SyzygyReport) {
        self.instances.push(Recorded {
            label: label.into(),
            r: report.params.r(),
            order: report.order,
            free: report.free,
        });
    }
}

fn unit_lengths(r: usize) -> LengthVector {
    LengthVector::from_integers(&vec![1; r]).unwrap()
}

fn params(m: u32, n: u32, ell: &LengthVector, c: Rational64) -> ChainSpaceParams {
    ChainSpaceParams::new(m, n, ell.clone(), c).unwrap()
}

fn rat(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

/// Criterion 1: for every rank up to five, the image of the j-th Koszul
/// differential has syzygy order exactly j (free at the top) and
/// homological dimension r - j.
fn criterion_1() -> Vec<String> {
    let mut errors = Vec::new();
    for r in 1..=5usize {
        for j in 1..=r {
            let p = koszul_image_presentation(r, j).unwrap();
            let order = syzygy_order(&p);
            let want = if j == r {
                SyzygyOrder::Free
            } else {
                SyzygyOrder::Order(j as u32)
            };
            if order != want {
                errors.push(format!("K_{j} over {r} vars: order {order}, expected {want}"));
            }
            let hdim = homological_dimension(&p);
            if hdim != r - j {
                errors.push(format!("K_{j} over {r} vars: hdim {hdim}, expected {}", r - j));
            }
        }
    }
    errors
}

/// Criterion 2: unit lengths at threshold zero realize the maximal order
/// k = (r-1)/2 without being free, for r = 3 and r = 5.
fn criterion_2(suite: &mut Suite) -> Vec<String> {
    let mut errors = Vec::new();
    for (r, k) in [(3usize, 1u32), (5, 2)] {
        let p = params(2, 1, &unit_lengths(r), rat(0, 1));
        let report = p.full_report();
        if report.order != SyzygyOrder::Order(k) {
            errors.push(format!(
                "unit lengths r={r}: order {}, expected {k}",
                report.order
            ));
        }
        if report.free {
            errors.push(format!("unit lengths r={r}: reported free"));
        }
        suite.record(format!("unit r={r} c=0"), &report);
    }
    errors
}

/// Criterion 3: for r = 3 the connecting matrix is the middle Koszul
/// differential padded by one zero row (the empty set) and one zero column
/// (the full set), bit-exact in the shared subset order.
fn criterion_3() -> Vec<String> {
    let mut errors = Vec::new();
    let p = params(2, 1, &unit_lengths(3), rat(0, 1));
    let iota = p.iota();
    let delta = koszul_differential(3, 2).unwrap();

    if iota.rows.first() != Some(&polysyz::subset::SubsetIndex::EMPTY) {
        errors.push("first row is not the empty set".into());
    }
    if iota.cols.last() != Some(&polysyz::subset::SubsetIndex::full(3)) {
        errors.push("last column is not the full set".into());
    }
    if iota.rows[1..].to_vec() != subsets_of_size(3, 1) {
        errors.push("row labels do not follow the singleton order".into());
    }
    if iota.cols[..3].to_vec() != subsets_of_size(3, 2) {
        errors.push("column labels do not follow the pair order".into());
    }
    for i in 0..4 {
        for j in 0..4 {
            let entry = iota.matrix.entry(i, j);
            if i == 0 || j == 3 {
                if !entry.is_zero() {
                    errors.push(format!("padding entry ({i},{j}) is nonzero"));
                }
            } else if entry != delta.entry(i - 1, j) {
                errors.push(format!("entry ({i},{j}) differs from the Koszul block"));
            }
        }
    }
    errors
}

/// Criterion 4: the three reference scenarios reproduce their verdict
/// tables, including weakly decreasing free rank above the last wall.
fn criterion_4(suite: &mut Suite) -> Vec<String> {
    let mut errors = Vec::new();

    // scenario 1: unit lengths, r = 3
    let ell = unit_lengths(3);
    for (c, want_order, want_zero) in [
        (rat(1, 2), SyzygyOrder::Order(1), false),
        (rat(2, 1), SyzygyOrder::Free, false),
        (rat(4, 1), SyzygyOrder::Free, true),
    ] {
        let report = params(2, 1, &ell, c).full_report();
        if report.order != want_order {
            errors.push(format!("(1,1,1) c={c}: order {}, expected {want_order}", report.order));
        }
        if (report.long_sets.is_empty()) != want_zero {
            errors.push(format!("(1,1,1) c={c}: zero-module flag wrong"));
        }
        suite.record(format!("(1,1,1) c={c}"), &report);
    }

    // scenario 2: (2,2,3,3,3)
    let ell = LengthVector::from_integers(&[2, 2, 3, 3, 3]).unwrap();
    for (c, want_order) in [
        (rat(1, 2), SyzygyOrder::Order(2)),
        (rat(2, 1), SyzygyOrder::Order(1)),
        (rat(4, 1), SyzygyOrder::Free),
    ] {
        let report = params(2, 1, &ell, c).full_report();
        if report.order != want_order {
            errors.push(format!(
                "(2,2,3,3,3) c={c}: order {}, expected {want_order}",
                report.order
            ));
        }
        suite.record(format!("(2,2,3,3,3) c={c}"), &report);
    }
    match sweep(2, 1, &ell) {
        Ok(rows) => {
            let free_ranks: Vec<usize> = rows
                .iter()
                .filter_map(|row| row.free_rank)
                .collect();
            if !free_ranks.windows(2).all(|w| w[0] >= w[1]) {
                errors.push(format!("(2,2,3,3,3): free ranks not weakly decreasing: {free_ranks:?}"));
            }
        }
        Err(e) => errors.push(format!("(2,2,3,3,3) sweep failed: {e}")),
    }

    // scenario 3: (2,2,2,3)
    let ell = LengthVector::from_integers(&[2, 2, 2, 3]).unwrap();
    for (c, want_order) in [(rat(1, 2), SyzygyOrder::Order(0)), (rat(2, 1), SyzygyOrder::Free)] {
        let report = params(2, 1, &ell, c).full_report();
        if report.order != want_order {
            errors.push(format!(
                "(2,2,2,3) c={c}: order {}, expected {want_order}",
                report.order
            ));
        }
        if (c == rat(2, 1)) != report.free {
            errors.push(format!("(2,2,2,3) c={c}: free flag wrong"));
        }
        suite.record(format!("(2,2,2,3) c={c}"), &report);
    }
    errors
}

/// Independent weight computation used to cross-check the dimension counts.
fn brute_long_count(ell: &LengthVector, c: Rational64) -> usize {
    let r = ell.r();
    (0u32..(1 << r))
        .filter(|mask| {
            let mut w = Rational64::from_integer(0);
            for (idx, l) in ell.entries().iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    w += l;
                } else {
                    w -= l;
                }
            }
            w > c
        })
        .count()
}

/// Criterion 5: dimension formulas on random generic length vectors, plus
/// the freeness criteria at the distinguished thresholds.
fn criterion_5(suite: &mut Suite) -> (Vec<String>, Vec<ChainSpaceParams>) {
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    let mut sampled: Vec<ChainSpaceParams> = Vec::new();
    let mut vectors = 0usize;
    while vectors < 20 {
        let r = rng.gen_range(1..=5usize);
        let entries: Vec<Rational64> = (0..r)
            .map(|_| Rational64::new(rng.gen_range(1..=9i64), rng.gen_range(1..=4i64)))
            .collect();
        let Ok(ell) = LengthVector::new(entries) else {
            continue;
        };
        if !polysyz::chainspace::is_generic(&ell, rat(0, 1)) {
            continue;
        }
        vectors += 1;

        let (_, cr_min) = polysyz::chainspace::critical_values(&ell);
        let chamber_list = chambers(&ell);
        let mid_first = chamber_list[0].representative;
        let dominating = {
            // smallest generic threshold at or above the largest length
            let max = ell.max_entry();
            let mut cand = max;
            while !polysyz::chainspace::is_generic(&ell, cand) {
                cand += rat(1, 7);
            }
            cand
        };
        let random_rep = chamber_list[rng.gen_range(0..chamber_list.len())].representative;

        for (c, tag) in [
            (rat(0, 1), "zero"),
            (mid_first, "first-chamber"),
            (dominating, "dominating"),
            (random_rep, "random-chamber"),
        ] {
            let p = params(2, 1, &ell, c);
            let report = p.full_report();
            let long = brute_long_count(&ell, c);
            if report.dim_h != 2 * long as u64 {
                errors.push(format!("{tag}: dim_H {} != 2|L_c| {}", report.dim_h, 2 * long));
            }
            let rank = generic_rank(&p.iota().matrix) as u64;
            if report.dim_h_fixed != report.dim_h - 2 * rank {
                errors.push(format!("{tag}: dim_H_fixed {} inconsistent", report.dim_h_fixed));
            }
            if c > rat(0, 1) && c < cr_min && report.dim_h != 1u64 << p.r() {
                errors.push(format!(
                    "{tag}: dim_H {} != 2^r below the first wall",
                    report.dim_h
                ));
            }
            if report.free != (report.dim_h == report.dim_h_fixed) {
                errors.push(format!("{tag}: freeness vs dimension equality mismatch"));
            }
            if c == rat(0, 1) && report.free {
                errors.push(format!("{tag}: free at threshold zero"));
            }
            if c >= ell.max_entry() && !report.free {
                errors.push(format!("{tag}: dominated threshold not free"));
            }
            suite.record(format!("random #{vectors} {tag}"), &report);
            sampled.push(p);
        }
    }
    (errors, sampled)
}

/// Criterion 6: exhaustively over the long-set families realizable with
/// integer lengths up to five and ranks three and four, one representative
/// threshold per chamber: the engine order equals the maximal value exactly
/// when the classification predicts it.
fn criterion_6(suite: &mut Suite) -> Vec<String> {
    let mut errors = Vec::new();
    for r in [3usize, 4] {
        let k = if r % 2 == 1 {
            (r as u32 - 1) / 2
        } else {
            (r as u32 - 2) / 2
        };
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![1i64; r];
        loop {
            // iterate lengths in {1..5}^r
            if let Ok(ell) = LengthVector::from_integers(&stack) {
                if polysyz::chainspace::is_generic(&ell, rat(0, 1)) {
                    for chamber in chambers(&ell) {
                        let c = chamber.representative;
                        let family: Vec<u32> = all_subsets(r)
                            .into_iter()
                            .filter(|&j| polysyz::chainspace::subset_weight(&ell, j) > c)
                            .map(|j| j.mask())
                            .collect();
                        if !seen.insert((r, family)) {
                            continue;
                        }
                        let p = params(2, 1, &ell, c);
                        let report = p.full_report();
                        let predicted_maximal = report.classification_predicted == Some(k);
                        let order_is_k = report.order == SyzygyOrder::Order(k);
                        if predicted_maximal != order_is_k {
                            errors.push(format!(
                                "r={r} lengths {stack:?} c={c}: order {} vs prediction {:?}",
                                report.order, report.classification_predicted
                            ));
                        }
                        suite.record(format!("class r={r} {stack:?} c={c}"), &report);
                    }
                }
            }
            // advance the counter
            let mut pos = 0;
            loop {
                if pos == r {
                    break;
                }
                stack[pos] += 1;
                if stack[pos] <= 5 {
                    break;
                }
                stack[pos] = 1;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
    }
    errors
}

/// Criterion 7: across every instance recorded by criteria 2 through 6, no
/// non-free module has syzygy order at least half the rank.
fn criterion_7(suite: &Suite) -> Vec<String> {
    let mut errors = Vec::new();
    if suite.instances.is_empty() {
        errors.push("no instances were recorded".into());
    }
    for inst in &suite.instances {
        if let SyzygyOrder::Order(o) = inst.order {
            let bound = (inst.r as u32).div_ceil(2);
            if o >= bound && !inst.free {
                errors.push(format!(
                    "{}: non-free with order {o} >= ceil(r/2) = {bound}",
                    inst.label
                ));
            }
        }
    }
    errors
}

/// Criterion 8: appending an asymptotically small length preserves the
/// computed syzygy order while the rank grows by one.
fn criterion_8(sampled: &[ChainSpaceParams]) -> Vec<String> {
    let mut errors = Vec::new();
    let mut taken = 0;
    for p in sampled {
        if p.r() >= 5 {
            continue; // the extension must stay within the ring width budget
        }
        let Ok(ext) = p.extend_by_zero() else {
            errors.push("extension failed on a generic instance".into());
            continue;
        };
        if ext.r() != p.r() + 1 {
            errors.push("extension did not grow the rank by one".into());
        }
        let before = syzygy_order(&p.cohomology().combined);
        let after = syzygy_order(&ext.cohomology().combined);
        if before != after {
            errors.push(format!(
                "order changed under extension: {before} -> {after} (r {} -> {})",
                p.r(),
                ext.r()
            ));
        }
        taken += 1;
        if taken == 10 {
            break;
        }
    }
    if taken < 10 {
        errors.push(format!("only {taken} instances were extendable"));
    }
    errors
}

/// Criterion 9: the randomized engine property suite (Groebner soundness,
/// kernels annihilate, resolutions exact, minimization stable) passes on
/// 200 cases over at most four variables.
fn criterion_9() -> Vec<String> {
    let summary = polysyz::selftest::run(0x5eed, 200);
    let mut errors = summary.failures.clone();
    if summary.cases != 200 {
        errors.push(format!("expected 200 cases, ran {}", summary.cases));
    }
    errors
}

#[test]
fn acceptance() {
    let mut suite = Suite {
        failures: Vec::new(),
        instances: Vec::new(),
    };

    let e = criterion_1();
    suite.criterion("1 (koszul oracle)", e);

    let e = criterion_2(&mut suite);
    suite.criterion("2 (maximal order, unit lengths)", e);

    let e = criterion_3();
    suite.criterion("3 (padded Koszul structure)", e);

    let e = criterion_4(&mut suite);
    suite.criterion("4 (reference verdict tables)", e);

    let (e, sampled) = criterion_5(&mut suite);
    suite.criterion("5 (dimension formulas)", e);

    let e = criterion_6(&mut suite);
    suite.criterion("6 (maximal-order classification)", e);

    let e = criterion_7(&suite);
    suite.criterion("7 (freeness meta-bound)", e);

    let e = criterion_8(&sampled);
    suite.criterion("8 (rank extension invariance)", e);

    let e = criterion_9();
    suite.criterion("9 (engine property suite)", e);

    assert!(
        suite.failures.is_empty(),
        "acceptance failures:\n{}",
        suite.failures.join("\n")
    );
}
