//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measurements (visible with `cargo test -- --nocapture`).

use metafib::analysis::{fit_conolly, frequency, gf_coefficients, ratio_estimate, ConollySignature};
use metafib::ceiling::{
    ceil_div, ceiling_seeded, check_conditions, check_p1, check_p2_kappa, formal_satisfy_oracle,
    min_initial_conditions,
};
use metafib::engine::evaluate;
use metafib::notation::{RecursionSpec, RecursionTerm};
use metafib::reference::{admissible_pairs, canonical_recursion, definitional_sequence};
use metafib::search::{run_search, SearchBox, SearchConfig};
use metafib::transforms::{
    interleave_order_multiplying, perturb, shift_alpha_zero, weave_fixed_order, WeaveInput,
};
use metafib::trees::{cell_count_sequence, leaf_count_sequence, TreePrefix};
use std::time::Instant;

const CONOLLY_20: [i64; 20] = [1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12];

fn parse(text: &str) -> RecursionSpec {
    RecursionSpec::parse(text).unwrap()
}

/// Criterion 1: the Conolly recursion reproduces its first twenty values
/// exactly, in under a millisecond.
#[test]
fn c01_conolly_ground_truth() {
    let spec = parse("<0;1:1;2>[1,2]");
    // Warm up, then time the evaluation itself.
    let warm = evaluate(&spec, 20).unwrap();
    assert_eq!(warm.values, CONOLLY_20);
    let started = Instant::now();
    let run = evaluate(&spec, 20).unwrap();
    let elapsed = started.elapsed();
    assert!(run.is_alive());
    assert_eq!(run.values, CONOLLY_20, "criterion 1: values diverge from the table");
    assert!(elapsed.as_micros() < 1000, "criterion 1: took {elapsed:?}, budget 1 ms");
    println!("PASS criterion 1: 20/20 values exact in {elapsed:?}");
}

/// Criterion 2: the two order-1 recursions agree pointwise to 1e5, and the
/// tree cell count reproduces the same sequence to 2000.
#[test]
fn c02_l_equals_conolly() {
    let started = Instant::now();
    let conolly = evaluate(&parse("<0;1:1;2>[1,2]"), 100_000).unwrap();
    let h = evaluate(&parse("<0;2:3;5>[1,2,2,3,4]"), 100_000).unwrap();
    assert!(conolly.is_alive() && h.is_alive());
    assert_eq!(conolly.values, h.values, "criterion 2: recursions diverge");
    let l = cell_count_sequence(2000);
    assert_eq!(l, conolly.values[..2000], "criterion 2: tree count diverges");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 2: took {elapsed:?}, budget 5 s");
    println!("PASS criterion 2: pointwise to 1e5, tree to 2000, in {elapsed:?}");
}

/// Criterion 3: every admissible pair of orders 1..4 has its canonical
/// recursion solving to the definitional sequence, and the U-tree leaf
/// count agrees as well.
#[test]
fn c03_canonical_family() {
    let mut pairs_checked = 0;
    for p in 1..=4 {
        for pair in admissible_pairs(p) {
            let expected = definitional_sequence(pair.alpha, pair.beta, 2000).unwrap();
            let spec = canonical_recursion(pair.alpha, pair.beta).unwrap();
            let run = evaluate(&spec, 2000).unwrap();
            assert!(run.is_alive(), "criterion 3: {spec} died");
            assert_eq!(run.values, expected, "criterion 3: {spec} diverges");
            let m = leaf_count_sequence(pair.alpha, pair.beta, 1500).unwrap();
            assert_eq!(m, expected[..1500], "criterion 3: tree count diverges for {}", spec);
            pairs_checked += 1;
        }
    }
    assert_eq!(pairs_checked, 20);
    println!("PASS criterion 3: 20 pairs, evaluation and tree counts exact");
}

/// Criterion 4: the arithmetic conditions, the brute-force oracle, and the
/// specialized order-1/order-2 tests agree exhaustively over the stated
/// boxes, single-threaded.
#[test]
fn c04_ceiling_condition_oracle_equivalence() {
    let started = Instant::now();
    let mut checked: u64 = 0;

    for s in 0..=6i64 {
        for t in 0..=6i64 {
            for a in 1..=13i64 {
                for b in 1..=13i64 {
                    let spec = RecursionSpec::new(
                        vec![RecursionTerm::new(s, vec![a]), RecursionTerm::new(t, vec![b])],
                        Vec::new(),
                    );
                    let conditions = check_conditions(&spec, 1).unwrap().satisfied;
                    let oracle = formal_satisfy_oracle(&spec, 1, 0).unwrap();
                    let shortcut = check_p1(&spec).unwrap();
                    assert_eq!(conditions, oracle, "criterion 4 (p=1): {spec}");
                    assert_eq!(conditions, shortcut, "criterion 4 (p=1 shortcut): {spec}");
                    checked += 1;
                }
            }
        }
    }

    for s in 0..=5i64 {
        for t in 0..=5i64 {
            for a1 in 1..=13i64 {
                for a2 in 1..=13i64 {
                    for b1 in 1..=13i64 {
                        for b2 in 1..=13i64 {
                            let spec = RecursionSpec::new(
                                vec![
                                    RecursionTerm::new(s, vec![a1, a2]),
                                    RecursionTerm::new(t, vec![b1, b2]),
                                ],
                                Vec::new(),
                            );
                            let conditions = check_conditions(&spec, 2).unwrap().satisfied;
                            let oracle = formal_satisfy_oracle(&spec, 2, 0).unwrap();
                            let kappa = check_p2_kappa(&spec).unwrap();
                            assert_eq!(conditions, oracle, "criterion 4 (p=2): {spec}");
                            assert_eq!(
                                conditions,
                                kappa.is_some(),
                                "criterion 4 (p=2 kappa): {spec}"
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "criterion 4: took {elapsed:?}, budget 10 min");
    println!("PASS criterion 4: {checked} specs, 100% agreement, in {elapsed:?}");
}

/// Deterministic sampler of condition-satisfying order-p specs: remainders
/// are rejection-sampled against the residue conditions, quotients and the
/// balancing integer d are drawn directly, and the shifts follow from
/// condition 3.
fn sample_satisfying_specs(p: usize, count: usize, seed: u64) -> Vec<RecursionSpec> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let p_i = p as i64;
    let two_p = 2 * p_i;
    let residue_ok = |rems: &[i64]| {
        (0..p_i).all(|j| {
            rems.iter().filter(|&&r| r <= j).count() as i64 <= j
                && rems.iter().filter(|&&r| r >= two_p - j).count() as i64 <= j
        })
    };
    let draw_rems = |rng: &mut StdRng| loop {
        let rems: Vec<i64> = (0..p).map(|_| rng.random_range(1..two_p)).collect();
        if residue_ok(&rems) {
            return rems;
        }
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rems_a = draw_rems(&mut rng);
        let rems_b = draw_rems(&mut rng);
        let quos_a: Vec<i64> = (0..p).map(|_| rng.random_range(0..4)).collect();
        let quos_b: Vec<i64> = (0..p).map(|_| rng.random_range(0..4)).collect();
        let d: i64 = rng.random_range(-2..=2);
        let s = quos_a.iter().sum::<i64>() - two_p * d;
        let t = quos_b.iter().sum::<i64>() + two_p * d + p_i;
        if s < 0 || t < 0 {
            continue;
        }
        let offsets = |quos: &[i64], rems: &[i64]| -> Vec<i64> {
            quos.iter().zip(rems).map(|(q, r)| two_p * q + r).collect()
        };
        let spec = RecursionSpec::new(
            vec![
                RecursionTerm::new(s, offsets(&quos_a, &rems_a)),
                RecursionTerm::new(t, offsets(&quos_b, &rems_b)),
            ],
            Vec::new(),
        );
        assert!(
            check_conditions(&spec, p).unwrap().satisfied,
            "sampler built a non-satisfying spec {spec}"
        );
        out.push(spec);
    }
    out
}

/// Criterion 5: for sampled condition-satisfying specs of orders 1..3,
/// seeding the stated number of ceiling values generates ceil(n/2p)
/// through 1e4.
#[test]
fn c05_seeding_generates_the_ceiling_sequence() {
    for p in 1..=3usize {
        let expected: Vec<i64> = (1..=10_000).map(|n| ceil_div(n, 2 * p as i64)).collect();
        for spec in sample_satisfying_specs(p, 50, 0xC0FFEE + p as u64) {
            let c = min_initial_conditions(&spec, p).unwrap();
            let run = evaluate(&ceiling_seeded(&spec, p, c), 10_000).unwrap();
            assert!(run.is_alive(), "criterion 5: {spec} died");
            assert_eq!(run.values, expected, "criterion 5: {spec} diverges");
        }
    }
    println!("PASS criterion 5: 150 seeded specs generate the ceiling sequence to 1e4");
}

/// The conjectured complete candidate families for order 2, as
/// (s, a-choices, t, b-choices) with offsets drawn from small cartesian
/// products.
fn order2_family(
    s: i64,
    a1: &[i64],
    a2: &[i64],
    t: i64,
    b1: &[i64],
    b2: &[i64],
) -> Vec<RecursionSpec> {
    let mut out = Vec::new();
    for &x in a1 {
        for &y in a2 {
            for &u in b1 {
                for &v in b2 {
                    out.push(RecursionSpec::new(
                        vec![RecursionTerm::new(s, vec![x, y]), RecursionTerm::new(t, vec![u, v])],
                        Vec::new(),
                    ));
                }
            }
        }
    }
    out
}

fn expected_order2_hits(alpha: i64, beta: i64) -> Vec<String> {
    let families: Vec<Vec<RecursionSpec>> = match (alpha, beta) {
        (-2, 3) => vec![
            order2_family(0, &[1], &[3], 1, &[2], &[4]),
            order2_family(0, &[2], &[3], 3, &[4], &[7, 8, 9]),
            order2_family(0, &[2, 3, 4], &[4, 5, 6], 3, &[2, 3], &[9]),
            order2_family(0, &[2, 3, 4], &[4, 5, 6], 5, &[7, 8, 9], &[9, 10, 11]),
        ],
        (0, 2) => vec![
            order2_family(0, &[1, 2], &[2, 3], 1, &[1], &[4]),
            order2_family(0, &[1, 2], &[2, 3], 2, &[3, 4], &[4, 5]),
            order2_family(0, &[3, 4], &[4, 5], 4, &[3], &[10]),
            order2_family(0, &[3, 4], &[4, 5], 6, &[9, 10], &[10, 11]),
        ],
        (2, 1) => vec![
            order2_family(0, &[1], &[1], 1, &[2], &[2]),
            order2_family(0, &[1, 2], &[2, 3], 1, &[1], &[2]),
            order2_family(0, &[1, 2], &[2, 3], 2, &[1], &[5, 6]),
            order2_family(0, &[1, 2], &[2, 3], 2, &[2], &[4, 5]),
            order2_family(0, &[1, 2], &[2, 3], 3, &[4, 5], &[5, 6]),
        ],
        _ => panic!("no conjectured family for ({alpha},{beta})"),
    };
    let mut out: Vec<String> = families.concat().iter().map(|s| s.to_string()).collect();
    out.sort();
    out
}

fn conjecture_box() -> SearchBox {
    SearchBox { s: 0..=0, t: 0..=10, a: 1..=12, b: 1..=30 }
}

/// Criterion 6: the order-2 search over the standard box reproduces the
/// three conjectured candidate lists element-wise; and lengthening the comparison
/// window from 50 to 1000 only removes candidates.
#[test]
fn c06_order2_search_reproduction() {
    let started = Instant::now();
    for (alpha, beta, expected_count) in [(-2i64, 3i64, 103usize), (0, 2, 40), (2, 1, 37)] {
        let config = SearchConfig::new(2, alpha, beta, conjecture_box());
        let report = run_search(&config).unwrap();
        let mut got: Vec<String> =
            report.hits.iter().map(|h| h.spec.bare().to_string()).collect();
        got.sort();
        let expected = expected_order2_hits(alpha, beta);
        assert_eq!(got.len(), expected_count, "criterion 6: count for ({alpha},{beta})");
        assert_eq!(got, expected, "criterion 6: membership for ({alpha},{beta})");

        // Shorter comparison windows admit false positives, never fewer hits.
        let mut short = SearchConfig::new(2, alpha, beta, conjecture_box());
        short.compare_len = 50;
        let short_hits: std::collections::BTreeSet<String> = run_search(&short)
            .unwrap()
            .hits
            .iter()
            .map(|h| h.spec.bare().to_string())
            .collect();
        for hit in &got {
            assert!(short_hits.contains(hit), "criterion 6: monotonicity for {hit}");
        }
        println!(
            "criterion 6: ({alpha},{beta}) -> {} hits at 1000, {} at 50, {} examined",
            got.len(),
            short_hits.len(),
            report.examined
        );
        assert!(
            short_hits.len() >= got.len(),
            "criterion 6: window 50 lost hits for ({alpha},{beta})"
        );
    }
    println!("PASS criterion 6: 103 + 40 + 37 hits reproduced element-wise in {:?}", started.elapsed());
}

/// Criterion 7: the only order-1 recursions with the Conolly solution in
/// the stated box are the two known ones.
#[test]
fn c07_order1_conolly_search() {
    let config = SearchConfig::new(1, 0, 1, conjecture_box());
    let report = run_search(&config).unwrap();
    let got: Vec<String> = report.hits.iter().map(|h| h.spec.bare().to_string()).collect();
    assert_eq!(got, vec!["<0;1:1;2>", "<0;2:3;5>"], "criterion 7: hit set");
    println!("PASS criterion 7: exactly <0;1:1;2> and <0;2:3;5> ({} examined)", report.examined);
}

/// Criterion 8: the constructive transforms behave as proved: the woven
/// counterexample satisfies its doubled recursion and oscillates,
/// interleaving and perturbation scale the signature, and the alpha-shift
/// family keeps formal satisfaction.
#[test]
fn c08_transform_properties() {
    // Weave of the all-zero and powers-of-two solutions; substitution is
    // verified inside weave_fixed_order for the whole horizon.
    let input = WeaveInput {
        spec: parse("<1;1:3;3>"),
        inits: vec![vec![0, 0, 0, 0], vec![1, 1, 1, 2]],
    };
    let (woven_spec, _) = weave_fixed_order(&input, 5000).unwrap();
    assert_eq!(woven_spec.bare().to_string(), "<2;2:6;6>", "criterion 8: woven spec");

    let (_, woven) = weave_fixed_order(&input, 100_000).unwrap();
    let report = ratio_estimate(&woven);
    assert!(
        (report.even_estimate.to_f64() - 0.5).abs() < 1e-2,
        "criterion 8: even-index ratio {} not near 1/2",
        report.even_estimate
    );
    assert_eq!(report.odd_estimate.to_f64(), 0.0, "criterion 8: odd-index ratio nonzero");

    // Interleavings multiply the signature.
    let conolly = parse("<0;1:1;2>[1,2]");
    for m in [2usize, 3] {
        let lifted = interleave_order_multiplying(&conolly, m).unwrap();
        let run = evaluate(&lifted, 2000).unwrap();
        let fit = fit_conolly(&frequency(&run.values).unwrap()).unwrap();
        assert_eq!((fit.alpha, fit.beta), (0, m as i64), "criterion 8: interleave m={m}");
    }
    let perturbed = perturb(&conolly, 2, &[-1, 0], &[0, 1]).unwrap();
    assert_eq!(perturbed.bare().to_string(), "<0;2,3:2;3,4>");
    let run = evaluate(&perturbed, 2000).unwrap();
    let fit = fit_conolly(&frequency(&run.values).unwrap()).unwrap();
    assert_eq!((fit.alpha, fit.beta), (0, 2), "criterion 8: perturb");

    // The alpha-shift family stays formally satisfied.
    let mut spec = parse("<0;1:2;3>");
    assert!(formal_satisfy_oracle(&spec, 1, 0).unwrap());
    for x in 1..=10 {
        spec = shift_alpha_zero(&spec, 2).unwrap();
        assert!(formal_satisfy_oracle(&spec, 1, 0).unwrap(), "criterion 8: shift x={x}");
    }
    println!("PASS criterion 8: weave/oscillation, interleave, perturb, shift all verified");
}

/// Criterion 9: both difference-string constructions agree with each other
/// and with the Conolly first differences out to 2^14 bits, and the
/// conjugation identity holds.
#[test]
fn c09_difference_strings() {
    assert!(metafib::trees::verify_diff_identity(1 << 14), "criterion 9: streams diverge");
    for k in 2..=12 {
        let lhs = format!("0{}", metafib::trees::diff_string_f(k));
        let rhs = format!("{}0", metafib::trees::diff_string_d(k));
        assert_eq!(lhs, rhs, "criterion 9: conjugation at k={k}");
    }
    println!("PASS criterion 9: 2^14 bits agree; conjugation holds for k=2..12");
}

/// Criterion 10: pruning contracts, including the figure cases.
#[test]
fn c10_pruning_contracts() {
    let started = Instant::now();

    // Figure cases.
    let pruned = TreePrefix::build_t(20).prune().unwrap();
    assert_eq!(pruned.label_count(), 10, "criterion 10: T(20) -> T(10)");
    let pruned = TreePrefix::build_u(2, 1, 17).unwrap().prune().unwrap();
    assert_eq!(pruned.label_count(), 8, "criterion 10: U(17) -> U(8)");
    let pruned = TreePrefix::build_u(-2, 3, 12).unwrap().prune().unwrap();
    assert_eq!(pruned.label_count(), 4, "criterion 10: U(12) -> U(4)");

    // T contract over the stated range.
    let l = cell_count_sequence(1000);
    for n in 6..=1000usize {
        let pruned = TreePrefix::build_t(n).prune().unwrap();
        let target = n - l[n - 3] as usize;
        assert_eq!(pruned.label_count(), target, "criterion 10: T count at n={n}");
        assert!(!pruned.correction_spilled(), "criterion 10: correction spilled at n={n}");
        assert_eq!(
            pruned.structural_signature(),
            TreePrefix::build_t(target).structural_signature(),
            "criterion 10: T structure at n={n}"
        );
    }

    // U contract for every admissible pair of orders 1..4.
    for p in 1..=4usize {
        for pair in admissible_pairs(p) {
            let (alpha, beta) = (pair.alpha, pair.beta);
            let m = leaf_count_sequence(alpha, beta, 1000).unwrap();
            let threshold = (4 * alpha + 5 * beta) as usize;
            for n in (threshold + 1)..=1000 {
                let pruned = TreePrefix::build_u(alpha, beta, n).unwrap().prune().unwrap();
                let shrink: i64 =
                    (1..=p as i64).map(|j| m[n - 2 * j as usize]).sum();
                let target = n - shrink as usize;
                assert_eq!(
                    pruned.label_count(),
                    target,
                    "criterion 10: U count at n={n} for ({alpha},{beta})"
                );
                assert_eq!(
                    pruned.structural_signature(),
                    TreePrefix::build_u(alpha, beta, target).unwrap().structural_signature(),
                    "criterion 10: U structure at n={n} for ({alpha},{beta})"
                );
            }
        }
    }
    println!("PASS criterion 10: T to 1000 and 20 U pairs to 1000, plus figure cases, in {:?}", started.elapsed());
}

/// Criterion 11: the truncated generating-function product reproduces the
/// definitional sequences to degree 512 for every pair of orders 1..4.
#[test]
fn c11_generating_function() {
    for p in 1..=4 {
        for pair in admissible_pairs(p) {
            let sig = ConollySignature::new(pair.alpha, pair.beta);
            let coefficients = gf_coefficients(&sig, 512);
            let expected = definitional_sequence(pair.alpha, pair.beta, 512).unwrap();
            assert_eq!(coefficients, expected, "criterion 11: ({},{})", pair.alpha, pair.beta);
        }
    }
    println!("PASS criterion 11: generating function exact to degree 512 for 20 pairs");
}
