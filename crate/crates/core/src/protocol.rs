//! Step machines for the equality, set-size and set protocols.
//!
//! All three share the same skeleton: every player's encoding becomes one row of a face-down
//! matrix, rows `2..=n` are revealed one at a time after a fresh shuffle and their matching cards
//! are swapped into row 1, and a last shuffle precedes the final reveal of row 1. The set protocol
//! uses rotations instead of full column permutations and carries an extra `E_k(0)` row that
//! lets the columns be put back in their original order before the final reveal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::card::{build_matrix, CardMatrix, InputVector, Pattern, Suit};
use crate::error::{Error, Result};
use crate::shuffle::{pile_shift, DecisionSource, RandomnessTape, Recording, ShuffleKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Protocol {
    Equality,
    SetSize,
    Set,
}

impl Protocol {
    pub const ALL: [Protocol; 3] = [Protocol::Equality, Protocol::SetSize, Protocol::Set];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Equality => "equality",
            Protocol::SetSize => "set-size",
            Protocol::Set => "set",
        }
    }

    pub fn shuffle_kind(self) -> ShuffleKind {
        match self {
            Protocol::Equality | Protocol::SetSize => ShuffleKind::Scramble,
            Protocol::Set => ShuffleKind::Shift,
        }
    }

    /// Suit that gets copied into row 1 during the overwriting step.
    pub fn overwrite_target(self) -> Suit {
        match self {
            Protocol::Equality => Suit::Heart,
            Protocol::SetSize | Protocol::Set => Suit::Club,
        }
    }

    /// One shuffle per loop iteration plus the final one.
    pub fn shuffle_kinds(self, n: usize) -> Vec<ShuffleKind> {
        vec![self.shuffle_kind(); n]
    }

    pub fn has_extra_row(self) -> bool {
        self == Protocol::Set
    }

    /// Number of reveal events in a complete run.
    pub fn transcript_len(self, n: usize) -> usize {
        match self {
            Protocol::Equality | Protocol::SetSize => n,
            Protocol::Set => n + 1,
        }
    }

    /// The function this protocol computes, evaluated directly.
    pub fn oracle(self, inputs: &InputVector) -> Output {
        match self {
            Protocol::Equality => Output::Bit(crate::oracle::oracle_equality(inputs)),
            Protocol::SetSize => Output::Count(crate::oracle::oracle_set_size(inputs)),
            Protocol::Set => Output::Set(crate::oracle::oracle_set(inputs)),
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "equality" => Ok(Protocol::Equality),
            "set-size" => Ok(Protocol::SetSize),
            "set" => Ok(Protocol::Set),
            other => Err(format!(
                "unknown protocol {other:?} (expected equality, set-size or set)"
            )),
        }
    }
}

/// Value computed by a protocol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Output {
    Bit(u8),
    Count(usize),
    Set(BTreeSet<usize>),
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Bit(b) => write!(f, "{b}"),
            Output::Count(c) => write!(f, "{c}"),
            Output::Set(s) => {
                write!(f, "{{")?;
                for (i, j) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{j}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// Cards that became face up at one step, left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RevealEvent {
    pub step: String,
    pub row: usize,
    pub pattern: Pattern,
}

impl Serialize for RevealEvent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RevealEvent", 3)?;
        st.serialize_field("step", &self.step)?;
        st.serialize_field("row", &self.row)?;
        st.serialize_field("pattern", &self.pattern.to_string())?;
        st.end()
    }
}

/// Everything an observer of a run gets to see.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Transcript {
    pub events: Vec<RevealEvent>,
}

impl Transcript {
    /// Canonical text form, e.g. `step2b:i=2/r2=HCH;step4/r1=CHH`. Two transcripts are equal
    /// exactly when their canonical forms are.
    pub fn canonical(&self) -> String {
        self.events
            .iter()
            .map(|e| format!("{}/r{}={}", e.step, e.row, e.pattern))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Engine variants. Everything except `Faithful` is a deliberately broken protocol used to check
/// that the auditor notices leaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    #[default]
    Faithful,
    /// Reveals row 1 (row `n+1` for the set protocol) without the preceding shuffle.
    SkipFinalShuffle,
    /// Reveals row 2 without the preceding shuffle.
    SkipFirstLoopShuffle,
}

/// A point in the run at which an observer is shown the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stage {
    Built,
    Shuffled { step: String },
    Revealed { step: String, row: usize },
    Overwritten { row: usize },
    TurnedDown { row: usize },
    Realigned { rotation: usize },
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Built => write!(f, "step1: build matrix"),
            Stage::Shuffled { step } => write!(f, "{step}: shuffle"),
            Stage::Revealed { step, row } => write!(f, "{step}: turn over row {row}"),
            Stage::Overwritten { row } => write!(f, "step2c:i={row}: overwrite row 1"),
            Stage::TurnedDown { row } => write!(f, "step2d:i={row}: turn face-up cards down"),
            Stage::Realigned { rotation } => write!(f, "step4: realign columns by {rotation}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolRun {
    pub protocol: Protocol,
    pub inputs: InputVector,
    pub output: Output,
    pub transcript: Transcript,
    pub shuffles_used: usize,
    pub final_matrix: CardMatrix,
    /// The decisions actually consumed, in order.
    pub tape: RandomnessTape,
}

/// Swaps every card of the face-up row `row` whose suit is `target` with the card of row 1 in
/// the same column. Facing travels with the card.
pub fn overwrite_step(m: &CardMatrix, row: usize, target: Suit) -> Result<CardMatrix> {
    if !(2..=m.rows()).contains(&row) {
        return Err(Error::ProtocolState(format!(
            "overwrite row {row} outside 2..={}",
            m.rows()
        )));
    }
    for r in 1..=m.rows() {
        let up = m.row(r).iter().filter(|c| c.is_face_up()).count();
        let expected = if r == row { m.cols() } else { 0 };
        if up != expected {
            return Err(Error::ProtocolState(format!(
                "overwrite needs only row {row} face up, row {r} has {up} face-up cards"
            )));
        }
    }
    let mut out = m.clone();
    for j in 1..=m.cols() {
        if m.card(row, j).suit() == target {
            out.swap_cards((row, j), (1, j));
        }
    }
    Ok(out)
}

fn reveal(m: &mut CardMatrix, step: String, row: usize) -> RevealEvent {
    debug_assert!(m.row(row).iter().all(|c| !c.is_face_up()));
    m.turn_over_row(row);
    RevealEvent {
        step,
        row,
        pattern: Pattern(m.row(row).iter().map(|c| c.visible().expect("face up")).collect()),
    }
}

struct Engine<'a, S: ?Sized, F> {
    protocol: Protocol,
    variant: Variant,
    source: Recording<&'a mut S>,
    observe: F,
    m: CardMatrix,
    shuffles: usize,
    events: Vec<RevealEvent>,
}

impl<S, F> Engine<'_, S, F>
where
    S: DecisionSource + ?Sized,
    F: FnMut(&Stage, &CardMatrix),
{
    fn shuffle(&mut self, step: String) -> Result<()> {
        let d = self.source.draw(self.protocol.shuffle_kind(), self.m.cols())?;
        self.m = d.apply(&self.m)?;
        self.shuffles += 1;
        (self.observe)(&Stage::Shuffled { step }, &self.m);
        Ok(())
    }

    fn reveal(&mut self, step: &str, row: usize) -> Pattern {
        let event = reveal(&mut self.m, step.to_string(), row);
        let pattern = event.pattern.clone();
        self.events.push(event);
        (self.observe)(
            &Stage::Revealed {
                step: step.to_string(),
                row,
            },
            &self.m,
        );
        pattern
    }

    fn run(&mut self, n: usize) -> Result<Pattern> {
        for i in 2..=n {
            if !(i == 2 && self.variant == Variant::SkipFirstLoopShuffle) {
                self.shuffle(format!("step2a:i={i}"))?;
            }
            self.reveal(&format!("step2b:i={i}"), i);
            self.m = overwrite_step(&self.m, i, self.protocol.overwrite_target())?;
            (self.observe)(&Stage::Overwritten { row: i }, &self.m);
            self.m.turn_over_face_up();
            (self.observe)(&Stage::TurnedDown { row: i }, &self.m);
        }
        if self.variant != Variant::SkipFinalShuffle {
            self.shuffle("step3".to_string())?;
        }
        match self.protocol {
            Protocol::Equality | Protocol::SetSize => Ok(self.reveal("step4", 1)),
            Protocol::Set => {
                let k = self.m.cols();
                // realignment is derived from the public reveal only
                let marker = self.reveal("step4", n + 1);
                let club = match marker.club_columns().as_slice() {
                    [c] => *c,
                    other => {
                        return Err(Error::ProtocolState(format!(
                            "row {} shows {} clubs at realignment",
                            n + 1,
                            other.len()
                        )))
                    }
                };
                let rotation = (k + 1 - club) % k;
                self.m = pile_shift(&self.m, rotation)?;
                (self.observe)(&Stage::Realigned { rotation }, &self.m);
                Ok(self.reveal("step5", 1))
            }
        }
    }
}

/// Runs `protocol` on `inputs`, drawing shuffles from `source` and showing every intermediate
/// matrix to `observe`.
pub fn run_observed<S, F>(
    protocol: Protocol,
    inputs: &InputVector,
    source: &mut S,
    variant: Variant,
    observe: F,
) -> Result<ProtocolRun>
where
    S: DecisionSource + ?Sized,
    F: FnMut(&Stage, &CardMatrix),
{
    let m = build_matrix(inputs, protocol.has_extra_row())?;
    let mut engine = Engine {
        protocol,
        variant,
        source: Recording::new(source),
        observe,
        m,
        shuffles: 0,
        events: Vec::new(),
    };
    (engine.observe)(&Stage::Built, &engine.m);
    let last = engine.run(inputs.n())?;
    let output = match protocol {
        Protocol::Equality => Output::Bit(u8::from(last.clubs() == 1)),
        Protocol::SetSize => Output::Count(last.clubs()),
        Protocol::Set => Output::Set(last.club_columns().into_iter().map(|c| c - 1).collect()),
    };
    Ok(ProtocolRun {
        protocol,
        inputs: inputs.clone(),
        output,
        transcript: Transcript {
            events: engine.events,
        },
        shuffles_used: engine.shuffles,
        final_matrix: engine.m,
        tape: engine.source.into_tape(),
    })
}

pub fn run_protocol<S: DecisionSource + ?Sized>(
    protocol: Protocol,
    inputs: &InputVector,
    source: &mut S,
) -> Result<ProtocolRun> {
    run_observed(protocol, inputs, source, Variant::Faithful, |_, _| {})
}

pub fn run_equality<S: DecisionSource + ?Sized>(
    inputs: &InputVector,
    source: &mut S,
) -> Result<ProtocolRun> {
    run_protocol(Protocol::Equality, inputs, source)
}

pub fn run_set_size<S: DecisionSource + ?Sized>(
    inputs: &InputVector,
    source: &mut S,
) -> Result<ProtocolRun> {
    run_protocol(Protocol::SetSize, inputs, source)
}

pub fn run_set<S: DecisionSource + ?Sized>(
    inputs: &InputVector,
    source: &mut S,
) -> Result<ProtocolRun> {
    run_protocol(Protocol::Set, inputs, source)
}

/// JSON record of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord<'a> {
    pub protocol: Protocol,
    pub k: usize,
    pub n: usize,
    pub inputs: &'a [usize],
    pub tape: &'a RandomnessTape,
    pub output: &'a Output,
    pub transcript: &'a Transcript,
    pub shuffles_used: usize,
}

impl ProtocolRun {
    pub fn record(&self) -> RunRecord<'_> {
        RunRecord {
            protocol: self.protocol,
            k: self.inputs.k(),
            n: self.inputs.n(),
            inputs: self.inputs.values(),
            tape: &self.tape,
            output: &self.output,
            transcript: &self.transcript,
            shuffles_used: self.shuffles_used,
        }
    }
}
