//! Run-level invariant checker shared by the property and acceptance suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cardmpc::{
    run_observed, CardMatrix, DecisionSource, InputVector, Output, Protocol, ProtocolRun, Stage,
    Suit, Variant,
};

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Violations {
    pub conservation: usize,
    pub monotone_hearts: usize,
    pub terminal_dichotomy: usize,
    pub sticky_clubs: usize,
    pub loop_row_purity: usize,
    pub realignment: usize,
    pub shuffle_accounting: usize,
    pub transcript_length: usize,
    pub turned_down: usize,
    pub correctness: usize,
}

impl Violations {
    pub fn total(&self) -> usize {
        self.conservation
            + self.monotone_hearts
            + self.terminal_dichotomy
            + self.sticky_clubs
            + self.loop_row_purity
            + self.realignment
            + self.shuffle_accounting
            + self.transcript_length
            + self.turned_down
            + self.correctness
    }

    pub fn add(&mut self, o: &Violations) {
        self.conservation += o.conservation;
        self.monotone_hearts += o.monotone_hearts;
        self.terminal_dichotomy += o.terminal_dichotomy;
        self.sticky_clubs += o.sticky_clubs;
        self.loop_row_purity += o.loop_row_purity;
        self.realignment += o.realignment;
        self.shuffle_accounting += o.shuffle_accounting;
        self.transcript_length += o.transcript_length;
        self.turned_down += o.turned_down;
        self.correctness += o.correctness;
    }
}

fn row_one_club_labels(m: &CardMatrix) -> BTreeSet<usize> {
    (1..=m.cols())
        .filter(|&j| m.card(1, j).suit() == Suit::Club)
        .map(|j| m.column_labels()[j - 1])
        .collect()
}

fn row_one_hearts(m: &CardMatrix) -> usize {
    m.row_pattern(1).hearts()
}

/// Runs one protocol while checking every per-step invariant.
pub fn checked_run<S: DecisionSource>(
    protocol: Protocol,
    inputs: &InputVector,
    source: &mut S,
) -> (ProtocolRun, Violations) {
    let n = inputs.n();
    let clubs_expected = if protocol == Protocol::Set { n + 1 } else { n };
    let mut v = Violations::default();
    let mut hearts: Option<usize> = None;
    let mut clubs: Option<BTreeSet<usize>> = None;

    let run = run_observed(protocol, inputs, source, Variant::Faithful, |stage, m| {
        if m.count_suit(Suit::Club) != clubs_expected
            || m.cards().count() != m.rows() * m.cols()
        {
            v.conservation += 1;
        }
        let h = row_one_hearts(m);
        if protocol == Protocol::Equality && hearts.is_some_and(|prev| h < prev) {
            v.monotone_hearts += 1;
        }
        hearts = Some(h);
        let labels = row_one_club_labels(m);
        if protocol != Protocol::Equality && clubs.as_ref().is_some_and(|prev| !prev.is_subset(&labels)) {
            v.sticky_clubs += 1;
        }
        clubs = Some(labels);
        match stage {
            Stage::Revealed { row, .. } if *row != 1 => {
                if m.row_pattern(*row).clubs() != 1 {
                    v.loop_row_purity += 1;
                }
            }
            Stage::TurnedDown { .. } if m.face_up_count() != 0 => v.turned_down += 1,
            _ => {}
        }
    })
    .expect("faithful run succeeds");

    if run.shuffles_used != n {
        v.shuffle_accounting += 1;
    }
    if run.transcript.len() != protocol.transcript_len(n) {
        v.transcript_length += 1;
    }
    let final_row = run.final_matrix.row_pattern(1);
    if protocol == Protocol::Equality && final_row.clubs() > 1 {
        v.terminal_dichotomy += 1;
    }
    let k = inputs.k();
    if protocol == Protocol::Set && run.final_matrix.column_labels() != (1..=k).collect::<Vec<_>>() {
        v.realignment += 1;
    }
    if run.output != protocol.oracle(inputs) {
        v.correctness += 1;
    }
    (run, v)
}

pub fn binomial(n: u64, r: u64) -> u64 {
    // Pascal's triangle, independent of any closed form
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(r as usize).copied().unwrap_or(0)
}

pub fn clubs_in(output: &Output) -> usize {
    match output {
        Output::Count(c) => *c,
        Output::Set(s) => s.len(),
        Output::Bit(b) => usize::from(*b),
    }
}
