//! Exhaustive invariant checks for every `n <= n_max`, with counterexample reporting.

use clap::ValueEnum;
use serde::Serialize;

use crate::dist::{
    check_symmetry, joint_distribution, mahonian_numbers, stat_distribution, table_stat_joint,
    Statistic,
};
use crate::error::Result;
use crate::perm::{all_permutations, EnumLimit, Permutation};
use crate::table::{all_tables, maj_insertion_outcome, Codec, InversionTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// encode∘decode and decode∘encode are identities for all three codecs.
    Roundtrip,
    /// inv of the inv-insertion word and maj of the maj-insertion word equal the table sum.
    StatIdentities,
    /// The rightmost-insertion word has inv = table sum and maj = table ascent sum.
    RightmostIdentities,
    /// Rightmost insertion yields the inverse of inv insertion.
    Inverse,
    /// Maj-insertion slots realize every delta 0..=j exactly once.
    Slots,
    /// inv and maj distributions both equal the Mahonian numbers.
    Equidistribution,
    /// The joint (inv, maj) matrix equals its transpose.
    Symmetry,
    /// The (sum, ascent sum) matrix over tables equals the (inv, maj) matrix.
    Transport,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Roundtrip,
        Check::StatIdentities,
        Check::RightmostIdentities,
        Check::Inverse,
        Check::Slots,
        Check::Equidistribution,
        Check::Symmetry,
        Check::Transport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Roundtrip => "roundtrip",
            Check::StatIdentities => "stat-identities",
            Check::RightmostIdentities => "rightmost-identities",
            Check::Inverse => "inverse",
            Check::Slots => "slots",
            Check::Equidistribution => "equidistribution",
            Check::Symmetry => "symmetry",
            Check::Transport => "transport",
        }
    }
}

/// Deliberate corruption used to exercise the failure path.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Maj-insertion decoding reads `1 - a_1` instead of `a_1`.
    FlipMajDelta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub n: usize,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.results.iter().find(|r| !r.passed())
    }

    pub fn total_cases(&self) -> u64 {
        self.results.iter().map(|r| r.cases).sum()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub checks: Vec<Check>,
    pub limit: EnumLimit,
    #[doc(hidden)]
    pub fault: Fault,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        VerifyOptions {
            n_max,
            checks: Check::ALL.to_vec(),
            limit: EnumLimit::default(),
            fault: Fault::None,
        }
    }
}

/// Runs each selected check for `n = 0..=n_max`; results are ordered by check, then `n`.
pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    opts.limit.check(opts.n_max)?;
    let mut checks = opts.checks.clone();
    checks.sort();
    checks.dedup();
    let mut results = Vec::new();
    for check in checks {
        for n in 0..=opts.n_max {
            let mut run = Run::new(check, n);
            match check {
                Check::Roundtrip => roundtrip(&mut run, opts)?,
                Check::StatIdentities => stat_identities(&mut run, opts)?,
                Check::RightmostIdentities => rightmost_identities(&mut run, opts)?,
                Check::Inverse => inverse(&mut run, opts)?,
                Check::Slots => slots(&mut run, opts)?,
                Check::Equidistribution => equidistribution(&mut run, opts)?,
                Check::Symmetry => symmetry(&mut run, opts)?,
                Check::Transport => transport(&mut run, opts)?,
            }
            results.push(run.result);
        }
    }
    Ok(VerifyReport {
        n_max: opts.n_max,
        results,
    })
}

struct Run {
    result: CheckResult,
}

impl Run {
    fn new(check: Check, n: usize) -> Self {
        Run {
            result: CheckResult {
                check,
                n,
                cases: 0,
                counterexample: None,
            },
        }
    }

    /// Counts one case; keeps the first mismatch.
    fn expect<T: PartialEq + ToString>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: T,
        actual: T,
    ) {
        self.result.cases += 1;
        if expected != actual && self.result.counterexample.is_none() {
            self.result.counterexample = Some(Counterexample {
                n: self.result.n,
                input: input(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
}

fn decode(codec: Codec, t: &InversionTable, fault: Fault) -> Permutation {
    if fault == Fault::FlipMajDelta && codec == Codec::MajInsertion && t.len() >= 2 {
        let mut entries = t.entries().to_vec();
        entries[1] = 1 - entries[1];
        return codec.decode(&InversionTable::new(entries).unwrap());
    }
    codec.decode(t)
}

fn roundtrip(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    for t in all_tables(run.result.n, opts.limit)? {
        for codec in Codec::ALL {
            let back = codec.encode(&decode(codec, &t, opts.fault));
            run.expect(|| format!("{codec} table {t}"), &t, &back);
        }
    }
    for p in all_permutations(run.result.n, opts.limit)? {
        for codec in Codec::ALL {
            let back = decode(codec, &codec.encode(&p), opts.fault);
            run.expect(|| format!("{codec} word {p}"), &p, &back);
        }
    }
    Ok(())
}

fn stat_identities(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    for t in all_tables(run.result.n, opts.limit)? {
        let inv = decode(Codec::InvInsertion, &t, opts.fault).inv();
        run.expect(|| format!("inv of inv-decoded {t}"), t.sum(), inv);
        let maj = decode(Codec::MajInsertion, &t, opts.fault).maj();
        run.expect(|| format!("maj of maj-decoded {t}"), t.sum(), maj);
    }
    Ok(())
}

fn rightmost_identities(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    for t in all_tables(run.result.n, opts.limit)? {
        let p = decode(Codec::RightmostInsertion, &t, opts.fault);
        run.expect(|| format!("inv of rightmost-decoded {t}"), t.sum(), p.inv());
        run.expect(
            || format!("maj of rightmost-decoded {t}"),
            t.ascent_sum(),
            p.maj(),
        );
    }
    Ok(())
}

fn inverse(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    for t in all_tables(run.result.n, opts.limit)? {
        let expected = decode(Codec::InvInsertion, &t, opts.fault).inverse();
        let actual = decode(Codec::RightmostInsertion, &t, opts.fault);
        run.expect(|| format!("rightmost table {t}"), expected, actual);
    }
    for p in all_permutations(run.result.n, opts.limit)? {
        let expected = Codec::InvInsertion.encode(&p.inverse());
        let actual = Codec::RightmostInsertion.encode(&p);
        run.expect(|| format!("rightmost word {p}"), expected, actual);
    }
    Ok(())
}

fn slots(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    let j = run.result.n;
    for word in all_permutations(j, opts.limit)? {
        let base = word.maj();
        let mut used = vec![false; j + 1];
        for delta in 0..=j {
            let out = maj_insertion_outcome(&word, delta)?;
            let realized = out.apply(&word).maj() - base;
            run.expect(
                || format!("word {word} delta {delta}"),
                delta as u64,
                realized,
            );
            let fresh = !std::mem::replace(&mut used[out.position], true);
            run.expect(
                || format!("word {word} delta {delta} slot {}", out.position),
                true,
                fresh,
            );
        }
    }
    Ok(())
}

fn equidistribution(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    let n = run.result.n;
    let mahonian = mahonian_numbers(n)?;
    for stat in [Statistic::Inv, Statistic::Maj] {
        let dist = stat_distribution(n, stat, opts.limit)?;
        for (k, (&want, &got)) in mahonian.counts.iter().zip(&dist.counts).enumerate() {
            run.expect(|| format!("{} count at k={k}", stat.name()), want, got);
        }
    }
    Ok(())
}

fn symmetry(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    let report = check_symmetry(&joint_distribution(run.result.n, opts.limit)?);
    run.result.cases += report.pairs_checked as u64;
    if let Some(v) = report.violations.first() {
        run.result.counterexample = Some(Counterexample {
            n: run.result.n,
            input: format!("cell ({}, {})", v.k, v.k_prime),
            expected: v.transposed_count.to_string(),
            actual: v.count.to_string(),
        });
    }
    Ok(())
}

fn transport(run: &mut Run, opts: &VerifyOptions) -> Result<()> {
    let n = run.result.n;
    let perms = joint_distribution(n, opts.limit)?;
    let tables = table_stat_joint(n, opts.limit)?;
    for k in 0..perms.dim() {
        for k_prime in 0..perms.dim() {
            run.expect(
                || format!("cell ({k}, {k_prime})"),
                perms.get(k, k_prime),
                tables.get(k, k_prime),
            );
        }
    }
    Ok(())
}
