//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every line reaches the terminal; exits nonzero if any fails.

use std::process::Command;
use std::time::Instant;

use genprob::algdata::{audit_table1, largest_class, scott_precondition, AlgGroupType, CharCase};
use genprob::estimate::Record;
use genprob::estimate::{
    decay_exact, exact_p, exact_whole, monte_carlo_p, subfield_trace_decay, McOptions, PairSource,
    COMMUTATOR,
};
use genprob::ffield::FiniteField;
use genprob::gentest::{dickson_kind, subgroup_closure, trace_field, trace_field_unchecked};
use genprob::matgrp::{close, elements_of_order, sample_uniform, Family, GroupSpec, SquareMatrix};
use genprob::report::records_to_string;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn sl2(p: u64, a: u32) -> GroupSpec {
    GroupSpec::new(Family::SL2, FiniteField::new(p, a).unwrap(), false)
}

/// `exact --family PSp4 --q 3 --r 2 --s 3` through the binary.
fn exact_zero() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_genprob"))
        .args([
            "exact", "--family", "PSp4", "--q", "3", "--r", "2", "--s", "3",
        ])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let row: Vec<&str> = text.lines().nth(1).unwrap_or("").split(',').collect();
    let ok = out.status.code() == Some(0)
        && row.len() == 17
        && row[8] == "0"
        && row[7] != "0"
        && row[13] == "0";
    check(ok, format!("row {:?}", text.lines().nth(1).unwrap_or("")))
}

/// Representative fixing against a plain double loop over all pairs.
fn hurwitz() -> Outcome {
    let s = GroupSpec::new(Family::SL2, FiniteField::new(7, 1).unwrap(), true);
    let e = exact_p(&s, 2, 3, 1_000_000).unwrap();
    let of_order = |r| -> Vec<SquareMatrix> {
        elements_of_order(&s, r, 1_000_000)
            .unwrap()
            .into_iter()
            .flat_map(|c| c.members)
            .collect()
    };
    let (xs, ys) = (of_order(2), of_order(3));
    let mut hits = 0u128;
    for x in &xs {
        for y in &ys {
            if close(&s, &[x.clone(), y.clone()], usize::MAX, None)
                .unwrap()
                .size()
                == 168
            {
                hits += 1;
            }
        }
    }
    let oracle = (hits, (xs.len() * ys.len()) as u128);
    let ok = e.numerator > 0 && (e.numerator, e.denominator) == oracle && oracle == (336, 1176);
    check(
        ok,
        format!(
            "exact {}/{}, double loop {}/{}",
            e.numerator, e.denominator, oracle.0, oracle.1
        ),
    )
}

fn zero_one_trend() -> Outcome {
    let reps: Vec<_> = [11u64, 101, 1009]
        .iter()
        .map(|&q| {
            monte_carlo_p(
                &sl2(q, 1),
                &PairSource::WholeGroup,
                &McOptions::new(100_000, 20_261_016 + q),
            )
            .unwrap()
        })
        .collect();
    let p: Vec<f64> = reps.iter().map(|r| r.point).collect();
    let increasing = p[0] < p[1] && p[1] < p[2];
    let gap = p[2] - p[0] > reps[2].wilson95.half_width() + reps[0].wilson95.half_width();
    check(
        increasing && gap,
        format!("points {:.5} {:.5} {:.5}", p[0], p[1], p[2]),
    )
}

fn dickson_cross_validation() -> Outcome {
    let mut total = 0;
    let mut bad = 0;
    for q in [5u64, 7, 9, 11, 13] {
        let (p, a) = genprob::ffield::prime_power(q).unwrap();
        let s = sl2(p, a);
        let order = q as u128 * (q as u128 * q as u128 - 1);
        bad += (0..10_000u64)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = ChaCha8Rng::seed_from_u64(q * 1_000_003 + i);
                let x = sample_uniform(&s, &mut rng);
                let y = sample_uniform(&s, &mut rng);
                let v = dickson_kind(&s, &x, &y).unwrap();
                let n = subgroup_closure(&s, &[x, y], order).unwrap();
                v.is_generating() != (n == order)
            })
            .count();
        total += 10_000;
    }
    check(bad == 0, format!("{bad} disagreements in {total} pairs"))
}

fn trace_field_soundness() -> Outcome {
    let mut certified = 0;
    let mut wrong = 0;
    let mut sub_wrong = 0;
    for (p, a) in [(3u64, 2u32), (5, 2), (11, 2)] {
        let s = sl2(p, a);
        let k = s.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 31 + a as u64);
        let mut found = 0;
        while found < 1000 {
            let x = sample_uniform(&s, &mut rng);
            let y = sample_uniform(&s, &mut rng);
            if dickson_kind(&s, &x, &y).unwrap().is_generating() {
                found += 1;
                if trace_field(s.space(), &[x, y]).unwrap() != a {
                    wrong += 1;
                }
            }
        }
        certified += found;
        // pairs with entries in the prime field
        for _ in 0..1000 {
            let mut m = || loop {
                let e: Vec<i64> = (0..4).map(|_| rng.gen_range(0..p as i64)).collect();
                let m = s.space().from_ints(&e).unwrap();
                if s.space().det(&m) == k.one() {
                    return m;
                }
            };
            let (x, y) = (m(), m());
            if trace_field_unchecked(s.space(), &[x, y]).unwrap() != 1 {
                sub_wrong += 1;
            }
        }
    }
    check(
        wrong == 0 && sub_wrong == 0,
        format!("{wrong} wrong of {certified} generating pairs, {sub_wrong} wrong of 3000 prime-field pairs"),
    )
}

fn subfield_decay() -> Outcome {
    let rows = subfield_trace_decay(2, &[2, 4, 6], &COMMUTATOR, 100_000, 7, None).unwrap();
    let f: Vec<f64> = rows.iter().map(|r| r.fraction()).collect();
    let exact = decay_exact(2, 2, &COMMUTATOR, 1_000_000).unwrap();
    let decreasing = f[0] > f[1] && f[1] > f[2];
    let near = (f[0] - exact.fraction()).abs() <= 3.0 * rows[0].wilson95().half_width();
    check(
        decreasing && near && (exact.proper_subfield, exact.trials) == (2040, 3600),
        format!(
            "fractions {:.5} {:.5} {:.5}, exhaustive a=2 {}/{}",
            f[0], f[1], f[2], exact.proper_subfield, exact.trials
        ),
    )
}

fn table_audit() -> Outcome {
    use AlgGroupType::*;
    use CharCase::*;
    // transcribed independently of the library table
    let expect: [(AlgGroupType, CharCase, &str, u64); 20] = [
        (E8, P2, "A1^4", 128),
        (E8, NotP2, "D8", 128),
        (E8, P3, "A2^2A1^2", 168),
        (E8, NotP3, "A8", 168),
        (E7, P2, "A1^4", 70),
        (E7, NotP2, "A7", 70),
        (E7, P3, "A2^2A1", 90),
        (E7, NotP3, "A5A2", 70),
        (E6, P2, "A1^3", 40),
        (E6, NotP2, "A1A5", 40),
        (E6, P3, "A2^2A1", 54),
        (E6, NotP3, "A2^3", 54),
        (F4, P2, "A1~A1", 28),
        (F4, NotP2, "A1C3", 28),
        (F4, P3, "~A2A1", 34),
        (F4, NotP3, "A2~A2", 34),
        (G2, P2, "~A1", 8),
        (G2, NotP2, "A1~A1", 8),
        (G2, P3, "G2(a1)", 10),
        (G2, NotP3, "A1T1", 10),
    ];
    let lookups = expect.iter().all(|&(g, c, label, dim)| {
        let e = largest_class(g, c, c.order()).unwrap();
        e.label == label && e.dim == dim
    });
    let scott = AlgGroupType::EXCEPTIONAL.iter().all(|&g| {
        [P2, NotP2].iter().all(|&a| {
            [P3, NotP3].iter().all(|&b| {
                let x = largest_class(g, a, 2).unwrap().dim;
                let y = largest_class(g, b, 3).unwrap().dim;
                scott_precondition(g, x, y).unwrap()
            })
        })
    });
    let flagged: Vec<String> = audit_table1()
        .into_iter()
        .filter(|r| !r.matches())
        .map(|r| format!("{} {} {}", r.class.group, r.class.case, r.class.label))
        .collect();
    let two = flagged == ["E7 p!=3 A5A2", "F4 p!=3 A2~A2"];
    check(
        lookups && scott && two,
        format!("lookups {lookups}, scott {scott}, flagged {flagged:?}"),
    )
}

fn statistics() -> Outcome {
    let s = sl2(5, 1);
    let exact = exact_whole(&s, 1_000_000).unwrap();
    let value = exact.to_f64();
    let covered = (0..100u64)
        .filter(|&i| {
            let r = monte_carlo_p(&s, &PairSource::WholeGroup, &McOptions::new(2000, 1000 + i))
                .unwrap();
            r.wilson95.contains(value)
        })
        .count();
    let psl = GroupSpec::new(Family::SL2, FiniteField::new(13, 1).unwrap(), true);
    let csv = |spec: &GroupSpec, src: &PairSource, t: usize| {
        let mut o = McOptions::new(20_000, 99);
        o.threads = Some(t);
        records_to_string(&[Record::Estimate(monte_carlo_p(spec, src, &o).unwrap())]).unwrap()
    };
    let mut same = true;
    for (spec, src) in [
        (&s, PairSource::WholeGroup),
        (&psl, PairSource::Orders { r: 2, s: 3 }),
    ] {
        let base = csv(spec, &src, 1);
        same &= [4, 8].iter().all(|&t| csv(spec, &src, t) == base);
    }
    check(
        covered >= 93 && same,
        format!(
            "coverage {covered}/100 around {}/{}, identical across 1/4/8 threads: {same}",
            exact.numerator, exact.denominator
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exact zero for PSp4(3), orders 2 and 3", exact_zero),
        ("Hurwitz pairs in PSL2(7)", hurwitz),
        ("zero-one trend for SL2(q) pairs", zero_one_trend),
        (
            "SL2 subgroup test against closure",
            dickson_cross_validation,
        ),
        ("trace field soundness", trace_field_soundness),
        ("subfield trace decay", subfield_decay),
        ("class dimension table audit", table_audit),
        ("Wilson coverage and thread reproducibility", statistics),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} [{}] {} ({:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
