//! Exhaustive correctness checking and transcript-distribution security audits.
//!
//! Security is checked as transcript indistinguishability: any two inputs on which the function
//! takes the same value must induce exactly the same distribution of transcripts over the full
//! randomness universe. Exact mode counts every tape; sampled mode estimates the distributions
//! and is only ever a statistical statement.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::card::{InputVector, Pattern};
use crate::error::{Error, Result};
use crate::num::{total_variation, Probability};
use crate::protocol::{run_observed, Output, Protocol, Transcript, Variant};
use crate::shuffle::{enumerate_tapes, universe_size, RandomnessTape, SeededSource, ShuffleKind};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Header attached to every audit report.
pub const SECURITY_DEFINITION: &str = "transcript indistinguishability: inputs with equal \
function output must induce identical transcript distributions over the randomness universe";

fn shuffle_kinds(protocol: Protocol, variant: Variant, n: usize) -> Vec<ShuffleKind> {
    let skipped = match variant {
        Variant::Faithful => 0,
        Variant::SkipFinalShuffle => 1,
        Variant::SkipFirstLoopShuffle => usize::from(n >= 2),
    };
    vec![protocol.shuffle_kind(); n - skipped]
}

fn check_budget(required: Option<u128>, budget: u128) -> Result<u128> {
    match required {
        Some(r) if r <= budget => Ok(r),
        required => Err(Error::BudgetExceeded { required, budget }),
    }
}

fn input_count(k: usize, n: usize) -> Option<u128> {
    (k as u128).checked_pow(u32::try_from(n).ok()?)
}

fn validate_shape(k: usize, n: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain {
            name: "k",
            value: k as i64,
            expected: "k >= 2".into(),
        });
    }
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: 0,
            expected: "n >= 1".into(),
        });
    }
    Ok(())
}

/// Occurrence counts of transcripts over a universe of equally likely tapes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TranscriptDistribution {
    counts: BTreeMap<Transcript, u64>,
    universe: u64,
}

impl TranscriptDistribution {
    pub fn add(&mut self, t: Transcript) {
        *self.counts.entry(t).or_insert(0) += 1;
        self.universe += 1;
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn counts(&self) -> &BTreeMap<Transcript, u64> {
        &self.counts
    }

    pub fn count(&self, t: &Transcript) -> u64 {
        self.counts.get(t).copied().unwrap_or(0)
    }

    pub fn probability<P: Probability>(&self, t: &Transcript) -> P {
        P::from_counts(self.count(t), self.universe)
    }

    /// Counts of the pattern revealed at event `index` (0-based).
    pub fn event_marginal(&self, index: usize) -> BTreeMap<Pattern, u64> {
        let mut out = BTreeMap::new();
        for (t, &c) in &self.counts {
            if let Some(e) = t.events.get(index) {
                *out.entry(e.pattern.clone()).or_insert(0) += c;
            }
        }
        out
    }

    /// Probability of each pattern at event `index`.
    pub fn event_law<P: Probability>(&self, index: usize) -> BTreeMap<Pattern, P> {
        self.event_marginal(index)
            .into_iter()
            .map(|(p, c)| (p, P::from_counts(c, self.universe)))
            .collect()
    }

    pub fn total_variation<P: Probability>(&self, other: &Self) -> P {
        let keys: Vec<&Transcript> = self
            .counts
            .keys()
            .chain(other.counts.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let p: Vec<P> = keys.iter().map(|t| self.probability(t)).collect();
        let q: Vec<P> = keys.iter().map(|t| other.probability(t)).collect();
        total_variation(&p, &q)
    }

    /// First transcript (in canonical order) whose count differs.
    fn first_difference(&self, other: &Self) -> Option<(Transcript, u64, u64)> {
        self.counts
            .keys()
            .chain(other.counts.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .find(|t| self.count(t) != other.count(t))
            .map(|t| (t.clone(), self.count(t), other.count(t)))
    }
}

impl Serialize for TranscriptDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            transcript_hashless_canonical: String,
            count: u64,
        }
        let mut seq = s.serialize_seq(Some(self.counts.len()))?;
        for (t, &count) in &self.counts {
            seq.serialize_element(&Entry {
                transcript_hashless_canonical: t.canonical(),
                count,
            })?;
        }
        seq.end()
    }
}

fn distribution_over(
    protocol: Protocol,
    variant: Variant,
    inputs: &InputVector,
    kinds: &[ShuffleKind],
) -> Result<TranscriptDistribution> {
    let mut dist = TranscriptDistribution::default();
    for mut tape in enumerate_tapes(kinds, inputs.k()) {
        let run = run_observed(protocol, inputs, &mut tape, variant, |_, _| {})?;
        dist.add(run.transcript);
    }
    Ok(dist)
}

/// Exact transcript distribution of one input over every tape.
pub fn transcript_distribution(
    protocol: Protocol,
    inputs: &InputVector,
    budget: u128,
) -> Result<TranscriptDistribution> {
    transcript_distribution_variant(protocol, Variant::Faithful, inputs, budget)
}

pub fn transcript_distribution_variant(
    protocol: Protocol,
    variant: Variant,
    inputs: &InputVector,
    budget: u128,
) -> Result<TranscriptDistribution> {
    let kinds = shuffle_kinds(protocol, variant, inputs.n());
    check_budget(universe_size(&kinds, inputs.k()), budget)?;
    distribution_over(protocol, variant, inputs, &kinds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Shape of the last reveal within one output class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalRevealLaw {
    /// Distinct patterns seen at the last reveal.
    pub support: usize,
    /// Every pattern in the support is exactly equally likely. Not decided for sampled reports.
    pub uniform: Option<bool>,
}

impl FinalRevealLaw {
    fn of(dist: &TranscriptDistribution, last: usize, mode: Mode) -> Self {
        let law = dist.event_marginal(last);
        let first = law.values().next().copied();
        FinalRevealLaw {
            support: law.len(),
            uniform: (mode == Mode::Exact).then(|| law.values().all(|&c| Some(c) == first)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub output: Output,
    pub inputs: usize,
    pub final_reveal: FinalRevealLaw,
    pub distribution: TranscriptDistribution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Counterexample {
    /// Two inputs with equal output whose transcript counts differ.
    Exact {
        output: Output,
        input_a: Vec<usize>,
        input_b: Vec<usize>,
        transcript: String,
        count_a: u64,
        count_b: u64,
    },
    /// A group of inputs (player `player` holding `value`) whose feature law drifts from its class.
    Statistical {
        output: Output,
        player: usize,
        value: usize,
        feature: String,
        tv: f64,
        critical: f64,
        group_samples: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub definition: &'static str,
    pub protocol: Protocol,
    pub k: usize,
    pub n: usize,
    pub mode: Mode,
    /// Tapes per input in exact mode, total runs in sampled mode.
    pub universe: u64,
    pub classes: Vec<ClassReport>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statistic: Option<SampledStatistic>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn class(&self, output: &Output) -> Option<&ClassReport> {
        self.classes.iter().find(|c| &c.output == output)
    }
}

/// Exact security audit over all `k^n` inputs.
pub fn check_security(protocol: Protocol, k: usize, n: usize, budget: u128) -> Result<AuditReport> {
    check_security_variant(protocol, Variant::Faithful, k, n, budget)
}

pub fn check_security_variant(
    protocol: Protocol,
    variant: Variant,
    k: usize,
    n: usize,
    budget: u128,
) -> Result<AuditReport> {
    validate_shape(k, n)?;
    let kinds = shuffle_kinds(protocol, variant, n);
    let universe = universe_size(&kinds, k);
    let required = universe.and_then(|u| u.checked_mul(input_count(k, n)?));
    check_budget(required, budget)?;

    let all: Vec<InputVector> = InputVector::all(k, n).collect();
    let dists = all
        .par_iter()
        .map(|x| distribution_over(protocol, variant, x, &kinds))
        .collect::<Result<Vec<_>>>()?;

    let mut classes: BTreeMap<Output, Vec<usize>> = BTreeMap::new();
    for (i, x) in all.iter().enumerate() {
        classes.entry(protocol.oracle(x)).or_default().push(i);
    }

    let last = protocol.transcript_len(n) - 1;
    let mut counterexample = None;
    let mut reports = Vec::with_capacity(classes.len());
    for (output, members) in classes {
        let reference = &dists[members[0]];
        if counterexample.is_none() {
            if let Some(&other) = members.iter().find(|&&i| dists[i] != *reference) {
                let (t, count_a, count_b) = reference
                    .first_difference(&dists[other])
                    .expect("distributions differ");
                counterexample = Some(Counterexample::Exact {
                    output: output.clone(),
                    input_a: all[members[0]].values().to_vec(),
                    input_b: all[other].values().to_vec(),
                    transcript: t.canonical(),
                    count_a,
                    count_b,
                });
            }
        }
        reports.push(ClassReport {
            output,
            inputs: members.len(),
            final_reveal: FinalRevealLaw::of(reference, last, Mode::Exact),
            distribution: reference.clone(),
        });
    }

    Ok(AuditReport {
        definition: SECURITY_DEFINITION,
        protocol,
        k,
        n,
        mode: Mode::Exact,
        universe: universe.expect("within budget") as u64,
        classes: reports,
        verdict: if counterexample.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        counterexample,
        statistic: None,
    })
}

/// Knobs for [`check_security_sampled`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledConfig {
    pub tv_threshold: f64,
    /// Groups with fewer samples than this are not tested.
    pub min_group: u64,
    pub variant: Variant,
}

impl Default for SampledConfig {
    fn default() -> Self {
        SampledConfig {
            tv_threshold: 0.01,
            min_group: 100,
            variant: Variant::Faithful,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledStatistic {
    pub tv_threshold: f64,
    /// Largest observed `tv - critical` over all tested groups; positive means fail.
    pub worst_margin: f64,
    pub groups_tested: u64,
}

#[derive(Default)]
struct ClassTally {
    inputs: BTreeMap<Vec<usize>, ()>,
    transcripts: TranscriptDistribution,
    features: Vec<BTreeMap<String, u64>>,
    grouped: BTreeMap<(usize, usize, usize), BTreeMap<String, u64>>,
}

fn feature_names(events: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=events).map(|t| format!("event {t}")).collect();
    names.extend((1..events).map(|t| format!("events {t}+{}", t + 1)));
    names
}

fn feature_values(t: &Transcript) -> Vec<String> {
    let p: Vec<String> = t.events.iter().map(|e| e.pattern.to_string()).collect();
    let mut out = p.clone();
    out.extend(p.windows(2).map(|w| format!("{}|{}", w[0], w[1])));
    out
}

/// Statistical audit for shapes beyond the exact budget.
///
/// Every sample draws an input uniformly from all `k^n` inputs and a fresh tape. Within each
/// output class, the law of every single reveal and of every pair of consecutive reveals is
/// estimated both for the whole class and for each group "player `i` holds value `v`". A group
/// fails when its total-variation distance from the class law exceeds
/// `tv_threshold + sqrt(support / group_samples)`, the second term absorbing sampling noise.
pub fn check_security_sampled(
    protocol: Protocol,
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
    config: SampledConfig,
) -> Result<AuditReport> {
    validate_shape(k, n)?;
    if samples < 10_000 {
        return Err(Error::Domain {
            name: "samples",
            value: samples as i64,
            expected: "samples >= 10000".into(),
        });
    }
    let mut source = SeededSource::new(seed);
    let mut tallies: BTreeMap<Output, ClassTally> = BTreeMap::new();
    let events = protocol.transcript_len(n);
    let names = feature_names(events);

    for _ in 0..samples {
        let values: Vec<usize> = (0..n).map(|_| source.rng().random_range(0..k)).collect();
        let x = InputVector::new(values, k)?;
        let run = run_observed(protocol, &x, &mut source, config.variant, |_, _| {})?;
        let tally = tallies.entry(run.output.clone()).or_default();
        if tally.features.is_empty() {
            tally.features = vec![BTreeMap::new(); names.len()];
        }
        let fv = feature_values(&run.transcript);
        for (f, v) in fv.iter().enumerate() {
            *tally.features[f].entry(v.clone()).or_insert(0) += 1;
            for (i, &a) in x.values().iter().enumerate() {
                *tally.grouped.entry((f, i, a)).or_default().entry(v.clone()).or_insert(0) += 1;
            }
        }
        tally.inputs.insert(x.values().to_vec(), ());
        tally.transcripts.add(run.transcript);
    }

    let mut worst: Option<(f64, Counterexample)> = None;
    let mut groups_tested = 0;
    for (output, tally) in &tallies {
        let class_total = tally.transcripts.universe();
        for (&(f, player, value), counts) in &tally.grouped {
            let group_total: u64 = counts.values().sum();
            if group_total < config.min_group {
                continue;
            }
            groups_tested += 1;
            let support: Vec<&String> = tally.features[f].keys().collect();
            let p: Vec<f64> = support
                .iter()
                .map(|v| f64::from_counts(counts.get(*v).copied().unwrap_or(0), group_total))
                .collect();
            let q: Vec<f64> = support
                .iter()
                .map(|v| f64::from_counts(tally.features[f][*v], class_total))
                .collect();
            let tv = total_variation(&p, &q);
            let critical = config.tv_threshold + (support.len() as f64 / group_total as f64).sqrt();
            let margin = tv - critical;
            if worst.as_ref().is_none_or(|(m, _)| margin > *m) {
                worst = Some((
                    margin,
                    Counterexample::Statistical {
                        output: output.clone(),
                        player: player + 1,
                        value,
                        feature: names[f].clone(),
                        tv,
                        critical,
                        group_samples: group_total,
                    },
                ));
            }
        }
    }

    let worst_margin = worst.as_ref().map_or(f64::NEG_INFINITY, |(m, _)| *m);
    let failed = worst_margin > 0.0;
    let last = events - 1;
    Ok(AuditReport {
        definition: SECURITY_DEFINITION,
        protocol,
        k,
        n,
        mode: Mode::Sampled,
        universe: samples,
        classes: tallies
            .into_iter()
            .map(|(output, t)| ClassReport {
                output,
                inputs: t.inputs.len(),
                final_reveal: FinalRevealLaw::of(&t.transcripts, last, Mode::Sampled),
                distribution: t.transcripts,
            })
            .collect(),
        verdict: if failed { Verdict::Fail } else { Verdict::Pass },
        counterexample: if failed { worst.map(|(_, c)| c) } else { None },
        statistic: Some(SampledStatistic {
            tv_threshold: config.tv_threshold,
            worst_margin,
            groups_tested,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub inputs: Vec<usize>,
    pub tape: RandomnessTape,
    pub expected: Output,
    pub got: Output,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectnessReport {
    pub protocol: Protocol,
    pub k: usize,
    pub n: usize,
    pub runs: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

/// Runs every input against every tape and compares with the oracle.
pub fn verify_correctness(
    protocol: Protocol,
    k: usize,
    n: usize,
    budget: u128,
) -> Result<CorrectnessReport> {
    validate_shape(k, n)?;
    let kinds = protocol.shuffle_kinds(n);
    let required = universe_size(&kinds, k).and_then(|u| u.checked_mul(input_count(k, n)?));
    check_budget(required, budget)?;

    let all: Vec<InputVector> = InputVector::all(k, n).collect();
    let per_input = all
        .par_iter()
        .map(|x| -> Result<(u64, u64, Option<Mismatch>)> {
            let expected = protocol.oracle(x);
            let (mut runs, mut bad, mut first) = (0u64, 0u64, None);
            for mut tape in enumerate_tapes(&kinds, k) {
                let run = run_observed(protocol, x, &mut tape, Variant::Faithful, |_, _| {})?;
                runs += 1;
                if run.output != expected {
                    bad += 1;
                    first.get_or_insert(Mismatch {
                        inputs: x.values().to_vec(),
                        tape: run.tape,
                        expected: expected.clone(),
                        got: run.output,
                    });
                }
            }
            Ok((runs, bad, first))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = CorrectnessReport {
        protocol,
        k,
        n,
        runs: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    for (runs, bad, first) in per_input {
        report.runs += runs;
        report.mismatches += bad;
        if report.first_mismatch.is_none() {
            report.first_mismatch = first;
        }
    }
    Ok(report)
}

/// Exact probability that the pattern at event `index` is `pattern`.
pub fn event_probability(
    dist: &TranscriptDistribution,
    index: usize,
    pattern: &Pattern,
) -> Ratio<u64> {
    let c = dist.event_marginal(index).get(pattern).copied().unwrap_or(0);
    Ratio::new(c, dist.universe())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::run_protocol;

    fn iv(v: &[usize], k: usize) -> InputVector {
        InputVector::new(v.to_vec(), k).unwrap()
    }

    #[test]
    fn universe_for_small_equality() {
        let d = transcript_distribution(Protocol::Equality, &iv(&[0, 0], 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(d.universe(), 4);
        assert_eq!(d.counts().values().sum::<u64>(), 4);
    }

    #[test]
    fn loop_reveal_is_uniform_for_equality() {
        let d = transcript_distribution(Protocol::Equality, &iv(&[2, 0, 1], 3), DEFAULT_BUDGET)
            .unwrap();
        for event in 0..2 {
            let law = d.event_law::<Ratio<u64>>(event);
            assert_eq!(law.len(), 3);
            assert!(law.values().all(|p| *p == Ratio::new(1, 3)));
        }
    }

    #[test]
    fn set_size_final_reveal_uniform_over_combinations() {
        let d = transcript_distribution(Protocol::SetSize, &iv(&[0, 2], 4), DEFAULT_BUDGET).unwrap();
        let law = d.event_law::<Ratio<u64>>(1);
        assert_eq!(law.len(), 6);
        assert!(law.values().all(|p| *p == Ratio::new(1, 6)));
    }

    #[test]
    fn equality_2x2_audit_classes() {
        let r = check_security(Protocol::Equality, 2, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        assert_eq!(r.classes.len(), 2);
        let zero = r.class(&Output::Bit(0)).unwrap();
        let one = r.class(&Output::Bit(1)).unwrap();
        assert_eq!((zero.inputs, one.inputs), (2, 2));
        let d01 = transcript_distribution(Protocol::Equality, &iv(&[0, 1], 2), DEFAULT_BUDGET).unwrap();
        let d10 = transcript_distribution(Protocol::Equality, &iv(&[1, 0], 2), DEFAULT_BUDGET).unwrap();
        let d00 = transcript_distribution(Protocol::Equality, &iv(&[0, 0], 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(d01, d10);
        assert_ne!(d01, d00);
        assert_eq!(zero.distribution, d01);
        assert_eq!(one.distribution, d00);
        assert_eq!(d01.total_variation::<Ratio<u64>>(&d00), Ratio::new(1, 1));
    }

    #[test]
    fn broken_loop_shuffle_is_caught() {
        let r = check_security_variant(
            Protocol::Equality,
            Variant::SkipFirstLoopShuffle,
            2,
            2,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.counterexample, Some(Counterexample::Exact { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            check_security(Protocol::Equality, 4, 3, 1000),
            Err(Error::BudgetExceeded { required: Some(884_736), budget: 1000 })
        ));
        assert!(matches!(
            verify_correctness(Protocol::Equality, 9, 9, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(transcript_distribution(Protocol::Equality, &iv(&[0; 6], 6), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn verify_small_grid() {
        let r = verify_correctness(Protocol::Equality, 3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.runs, r.mismatches), (5832, 0));
        let r = verify_correctness(Protocol::Set, 3, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.runs, r.mismatches), (729, 0));
        let r = verify_correctness(Protocol::SetSize, 4, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.runs, r.mismatches), (16 * 576, 0));
    }

    #[test]
    fn sampled_rejects_small_sample_counts() {
        assert!(check_security_sampled(Protocol::Equality, 3, 2, 100, 1, SampledConfig::default())
            .is_err());
    }

    #[test]
    fn sampled_is_deterministic_per_seed() {
        let a = check_security_sampled(Protocol::SetSize, 3, 3, 10_000, 5, SampledConfig::default())
            .unwrap();
        let b = check_security_sampled(Protocol::SetSize, 3, 3, 10_000, 5, SampledConfig::default())
            .unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed(), "{:?}", a.statistic);
    }

    #[test]
    fn report_json_shape() {
        let r = check_security(Protocol::Equality, 2, 2, DEFAULT_BUDGET).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["protocol"], "equality");
        assert_eq!(v["mode"], "exact");
        assert_eq!(v["universe"], 4);
        assert_eq!(v["verdict"], "pass");
        assert!(v["counterexample"].is_null());
        let entry = &v["classes"][0]["distribution"][0];
        assert!(entry["transcript_hashless_canonical"].is_string());
        assert!(entry["count"].is_u64());
    }

    #[test]
    fn event_probability_matches_direct_count() {
        let x = iv(&[1, 0], 3);
        let d = transcript_distribution(Protocol::Set, &x, DEFAULT_BUDGET).unwrap();
        let mut hits = 0;
        for mut tape in enumerate_tapes(&[ShuffleKind::Shift; 2], 3) {
            let run = run_protocol(Protocol::Set, &x, &mut tape).unwrap();
            if run.transcript.events[1].pattern.to_string() == "CHH" {
                hits += 1;
            }
        }
        assert_eq!(
            event_probability(&d, 1, &"CHH".parse().unwrap()),
            Ratio::new(hits, 9)
        );
    }
}
