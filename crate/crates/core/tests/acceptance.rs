//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mahonian::dist::{
    check_symmetry, joint_distribution, mahonian_numbers, stat_distribution, table_stat_joint,
    Statistic,
};
use mahonian::perm::{all_permutations, factorial, EnumLimit, Permutation};
use mahonian::table::{all_tables, maj_insertion_outcome, Codec, InversionTable};

const LIM: EnumLimit = EnumLimit::DEFAULT_LIMIT;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn example_table() -> InversionTable {
    InversionTable::new(vec![0, 1, 0, 3, 3]).unwrap()
}

fn steps(codec: Codec, t: &InversionTable) -> Vec<String> {
    codec
        .decode_steps(t)
        .iter()
        .map(Permutation::to_string)
        .collect()
}

fn c1_descents_of_241350() -> Outcome {
    let p = perm("241350");
    ensure(p.descent_positions() == [2, 5], || {
        format!("descents {:?}", p.descent_positions())
    })?;
    ensure(p.maj() == 7, || format!("maj {}", p.maj()))?;
    Ok("maj(241350) = 2 + 5 = 7".into())
}

fn c2_inv_insertion_build() -> Outcome {
    let got = steps(Codec::InvInsertion, &example_table());
    ensure(got == ["0", "10", "102", "3102", "34102"], || {
        format!("build {got:?}")
    })?;
    let inv = perm("34102").inv();
    ensure(inv == 7, || format!("inv(34102) = {inv}"))?;
    Ok("0 → 10 → 102 → 3102 → 34102, inv = 7".into())
}

fn c3_maj_insertion_table() -> Outcome {
    let base = perm("241350");
    let expected = [
        "2413506", "2413560", "2461350", "6241350", "2641350", "2416350", "2413650",
    ];
    for (delta, want) in expected.iter().enumerate() {
        let out = maj_insertion_outcome(&base, delta).map_err(|e| e.to_string())?;
        let word = out.apply(&base);
        ensure(word.to_string() == *want, || {
            format!("delta {delta}: {word} != {want}")
        })?;
        ensure(word.maj() == 7 + delta as u64, || {
            format!("maj({word}) = {}", word.maj())
        })?;
    }
    Ok("seven insertions of 6 give maj 7..=13".into())
}

fn c4_rightmost_build() -> Outcome {
    let t = example_table();
    let got = steps(Codec::RightmostInsertion, &t);
    ensure(got == ["0", "10", "102", "2130", "32401"], || {
        format!("build {got:?}")
    })?;
    let inv_of_inv = Codec::InvInsertion.decode(&t).inverse();
    ensure(inv_of_inv == perm("32401"), || {
        format!("inverse is {inv_of_inv}")
    })?;
    Ok("0 → 10 → 102 → 2130 → 32401 = inverse(34102)".into())
}

fn c5_rightmost_identities() -> Outcome {
    let mut cases = 0u64;
    for n in 0..=7 {
        for t in all_tables(n, LIM).map_err(|e| e.to_string())? {
            let p = Codec::RightmostInsertion.decode(&t);
            ensure(p.inv() == t.sum(), || format!("inv({p}) != sum of {t}"))?;
            ensure(p.maj() == t.ascent_sum(), || {
                format!("maj({p}) != ascent sum of {t}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} tables, zero violations"))
}

fn c6_equidistribution() -> Outcome {
    for n in 0..=8 {
        let b = mahonian_numbers(n).map_err(|e| e.to_string())?;
        let inv = stat_distribution(n, Statistic::Inv, LIM).map_err(|e| e.to_string())?;
        let maj = stat_distribution(n, Statistic::Maj, LIM).map_err(|e| e.to_string())?;
        ensure(inv == b, || {
            format!("n={n}: inv {:?} vs b {:?}", inv.counts, b.counts)
        })?;
        ensure(maj == b, || {
            format!("n={n}: maj {:?} vs b {:?}", maj.counts, b.counts)
        })?;
    }
    Ok("n = 0..=8, inv = maj = b(n, ·)".into())
}

fn c7_bijectivity() -> Outcome {
    let mut cases = 0u64;
    for n in 0..=7 {
        for codec in Codec::ALL {
            for t in all_tables(n, LIM).map_err(|e| e.to_string())? {
                let back = codec.encode(&codec.decode(&t));
                ensure(back == t, || format!("{codec}: {t} → {back}"))?;
                cases += 1;
            }
            for p in all_permutations(n, LIM).map_err(|e| e.to_string())? {
                let back = codec.decode(&codec.encode(&p));
                ensure(back == p, || format!("{codec}: {p} → {back}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} round trips, zero violations"))
}

fn c8_slot_bijection() -> Outcome {
    let mut cases = 0u64;
    for j in 0..=7 {
        for w in all_permutations(j, LIM).map_err(|e| e.to_string())? {
            let mut slots = HashSet::new();
            for delta in 0..=j {
                let out = maj_insertion_outcome(&w, delta).map_err(|e| e.to_string())?;
                let realized = out.apply(&w).maj() - w.maj();
                ensure(realized == delta as u64, || {
                    format!("{w} delta {delta} realized {realized}")
                })?;
                slots.insert(out.position);
                cases += 1;
            }
            ensure(slots.len() == j + 1, || {
                format!("{w}: only {} distinct slots", slots.len())
            })?;
        }
    }
    Ok(format!("{cases} (word, delta) pairs, zero violations"))
}

fn c9_joint_symmetry() -> Outcome {
    for n in 0..=8 {
        let m = joint_distribution(n, LIM).map_err(|e| e.to_string())?;
        let report = check_symmetry(&m);
        ensure(report.is_symmetric(), || {
            format!("n={n}: {:?}", report.violations)
        })?;
        if n <= 7 {
            let tables = table_stat_joint(n, LIM).map_err(|e| e.to_string())?;
            ensure(tables == m, || format!("n={n}: table joint differs"))?;
        }
    }
    Ok("symmetric for n ≤ 8, table joint = permutation joint for n ≤ 7".into())
}

/// b(n, k) = Σ_{i=0}^{min(k, n-1)} b(n-1, k-i), evaluated cell by cell.
fn recurrence_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for m in 1..=n {
        let k_max = m * (m - 1) / 2;
        row = (0..=k_max)
            .map(|k| (0..=k.min(m - 1)).filter_map(|i| row.get(k - i)).sum())
            .collect();
    }
    row
}

fn c10_mahonian_properties() -> Outcome {
    for n in 0..=12 {
        let d = mahonian_numbers(n).map_err(|e| e.to_string())?;
        let c = &d.counts;
        ensure(c.iter().eq(c.iter().rev()), || {
            format!("n={n} not palindromic")
        })?;
        ensure(c[0] == 1, || format!("n={n}: counts[0] = {}", c[0]))?;
        ensure(d.total() == factorial(n), || {
            format!("n={n}: total {}", d.total())
        })?;
        ensure(*c == recurrence_row(n), || {
            format!("n={n}: recurrence mismatch")
        })?;
    }
    Ok("n = 0..=12".into())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 descents and maj of 241350", c1_descents_of_241350, None),
        (
            "2 inv-insertion build of (0,1,0,3,3)",
            c2_inv_insertion_build,
            None,
        ),
        (
            "3 maj-insertion of 6 into 241350",
            c3_maj_insertion_table,
            None,
        ),
        (
            "4 rightmost build and inverse claim",
            c4_rightmost_build,
            None,
        ),
        (
            "5 rightmost inv/maj identities, n ≤ 7",
            c5_rightmost_identities,
            Some(Duration::from_secs(10)),
        ),
        (
            "6 equidistribution, n ≤ 8",
            c6_equidistribution,
            Some(Duration::from_secs(10)),
        ),
        ("7 codec bijectivity, n ≤ 7", c7_bijectivity, None),
        (
            "8 maj-insertion slot bijection, j ≤ 7",
            c8_slot_bijection,
            None,
        ),
        (
            "9 joint symmetry and transport",
            c9_joint_symmetry,
            Some(Duration::from_secs(30)),
        ),
        (
            "10 Mahonian vector properties, n ≤ 12",
            c10_mahonian_properties,
            None,
        ),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&result, budget) {
            if elapsed > budget {
                result = Err(format!("took {elapsed:?}, budget {budget:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
