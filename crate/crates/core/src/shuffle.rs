//! Column shuffles and the randomness tape that drives them.
//!
//! A permutation `p = (p_1, .., p_k)` sends source column `i` to destination column `p_i`.
//! Every random choice a protocol makes goes through a [`DecisionSource`], so a run can be
//! driven by a seeded generator, replayed from a recorded tape, or enumerated exhaustively.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::card::CardMatrix;
use crate::error::{Error, Result};

/// A bijection on `1..=k`, stored in destination form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(dest: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; dest.len()];
        for &d in &dest {
            if d == 0 || d > dest.len() || std::mem::replace(&mut seen[d - 1], true) {
                return Err(Error::NotAPermutation(dest));
            }
        }
        Ok(Permutation(dest))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    /// The rotation sending column `i` to column `i + r` (wrapping).
    pub fn cyclic(k: usize, r: usize) -> Self {
        Permutation((0..k).map(|i| (i + r) % k + 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Destination of 1-based source column `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &d) in self.0.iter().enumerate() {
            inv[d - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Self {
        Permutation(self.0.iter().map(|&d| next.apply(d)).collect())
    }

    fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|d| d - 1).collect()
    }

    /// All `k!` permutations in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=k).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Moves every column `i` to column `p_i`. Columns travel as intact piles.
pub fn pile_scramble(m: &CardMatrix, p: &Permutation) -> Result<CardMatrix> {
    if p.len() != m.cols() {
        return Err(Error::WidthMismatch {
            expected: m.cols(),
            got: p.len(),
        });
    }
    Ok(m.move_columns(&p.zero_based()))
}

/// Moves every column `i` to column `i + r`, wrapping around.
pub fn pile_shift(m: &CardMatrix, r: usize) -> Result<CardMatrix> {
    if r >= m.cols() {
        return Err(Error::Domain {
            name: "r",
            value: r as i64,
            expected: format!("0 <= r <= {}", m.cols() - 1),
        });
    }
    let k = m.cols();
    let dest: Vec<usize> = (0..k).map(|i| (i + r) % k).collect();
    Ok(m.move_columns(&dest))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleKind {
    Scramble,
    Shift,
}

impl ShuffleKind {
    pub fn name(self) -> &'static str {
        match self {
            ShuffleKind::Scramble => "scramble",
            ShuffleKind::Shift => "shift",
        }
    }

    /// Number of distinct decisions of this kind for `k` columns, `None` on overflow.
    pub fn branches(self, k: usize) -> Option<u128> {
        match self {
            ShuffleKind::Scramble => (2..=k as u128).try_fold(1u128, |acc, x| acc.checked_mul(x)),
            ShuffleKind::Shift => Some(k as u128),
        }
    }

    fn all_decisions(self, k: usize) -> Vec<ShuffleDecision> {
        match self {
            ShuffleKind::Scramble => Permutation::all(k)
                .into_iter()
                .map(ShuffleDecision::Scramble)
                .collect(),
            ShuffleKind::Shift => (0..k).map(ShuffleDecision::Shift).collect(),
        }
    }
}

/// One recorded shuffle: a column permutation or a cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleDecision {
    Scramble(Permutation),
    Shift(usize),
}

impl ShuffleDecision {
    pub fn kind(&self) -> ShuffleKind {
        match self {
            ShuffleDecision::Scramble(_) => ShuffleKind::Scramble,
            ShuffleDecision::Shift(_) => ShuffleKind::Shift,
        }
    }

    pub fn apply(&self, m: &CardMatrix) -> Result<CardMatrix> {
        match self {
            ShuffleDecision::Scramble(p) => pile_scramble(m, p),
            ShuffleDecision::Shift(r) => pile_shift(m, *r),
        }
    }

    /// The decision as a column permutation.
    pub fn permutation(&self, k: usize) -> Permutation {
        match self {
            ShuffleDecision::Scramble(p) => p.clone(),
            ShuffleDecision::Shift(r) => Permutation::cyclic(k, *r),
        }
    }
}

impl fmt::Display for ShuffleDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShuffleDecision::Scramble(p) => write!(f, "scramble{:?}", p.as_slice()),
            ShuffleDecision::Shift(r) => write!(f, "shift({r})"),
        }
    }
}

/// Anything that can hand out shuffle decisions.
pub trait DecisionSource {
    fn draw(&mut self, kind: ShuffleKind, k: usize) -> Result<ShuffleDecision>;
}

impl<S: DecisionSource + ?Sized> DecisionSource for &mut S {
    fn draw(&mut self, kind: ShuffleKind, k: usize) -> Result<ShuffleDecision> {
        (**self).draw(kind, k)
    }
}

/// Draws one decision of the requested kind from `source`.
pub fn draw_uniform<S: DecisionSource + ?Sized>(
    source: &mut S,
    kind: ShuffleKind,
    k: usize,
) -> Result<ShuffleDecision> {
    source.draw(kind, k)
}

/// Deterministic pseudo-random source: ChaCha8 seeded from a 64-bit seed.
///
/// Permutations come from a Fisher-Yates shuffle and rotations from `random_range`, both of which
/// sample without modulo bias.
#[derive(Debug, Clone)]
pub struct SeededSource {
    rng: ChaCha8Rng,
}

impl SeededSource {
    pub fn new(seed: u64) -> Self {
        SeededSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub(crate) fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl DecisionSource for SeededSource {
    fn draw(&mut self, kind: ShuffleKind, k: usize) -> Result<ShuffleDecision> {
        Ok(match kind {
            ShuffleKind::Scramble => {
                let mut dest: Vec<usize> = (1..=k).collect();
                dest.shuffle(&mut self.rng);
                ShuffleDecision::Scramble(Permutation(dest))
            }
            ShuffleKind::Shift => ShuffleDecision::Shift(self.rng.random_range(0..k)),
        })
    }
}

/// Records every decision handed out by an inner source.
#[derive(Debug)]
pub struct Recording<S> {
    inner: S,
    tape: RandomnessTape,
}

impl<S: DecisionSource> Recording<S> {
    pub fn new(inner: S) -> Self {
        Recording {
            inner,
            tape: RandomnessTape::default(),
        }
    }

    pub fn into_tape(self) -> RandomnessTape {
        self.tape
    }
}

impl<S: DecisionSource> DecisionSource for Recording<S> {
    fn draw(&mut self, kind: ShuffleKind, k: usize) -> Result<ShuffleDecision> {
        let d = self.inner.draw(kind, k)?;
        self.tape.decisions.push(d.clone());
        Ok(d)
    }
}

/// An ordered list of shuffle decisions, consumed front to back.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ShuffleDecision>", into = "Vec<ShuffleDecision>")]
pub struct RandomnessTape {
    decisions: Vec<ShuffleDecision>,
    cursor: usize,
}

impl RandomnessTape {
    pub fn new(decisions: Vec<ShuffleDecision>) -> Self {
        RandomnessTape {
            decisions,
            cursor: 0,
        }
    }

    pub fn decisions(&self) -> &[ShuffleDecision] {
        &self.decisions
    }

    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }

    /// Number of decisions consumed so far.
    pub fn consumed(&self) -> usize {
        self.cursor
    }

    pub fn rewind(&mut self) {
        self.cursor = 0;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.decisions).expect("tape serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<Vec<ShuffleDecision>>(s)
            .map(RandomnessTape::new)
            .map_err(|e| Error::TapeFormat(e.to_string()))
    }
}

impl From<Vec<ShuffleDecision>> for RandomnessTape {
    fn from(d: Vec<ShuffleDecision>) -> Self {
        RandomnessTape::new(d)
    }
}

impl From<RandomnessTape> for Vec<ShuffleDecision> {
    fn from(t: RandomnessTape) -> Self {
        t.decisions
    }
}

impl DecisionSource for RandomnessTape {
    fn draw(&mut self, kind: ShuffleKind, k: usize) -> Result<ShuffleDecision> {
        let index = self.cursor;
        let d = self.decisions.get(index).ok_or(Error::TapeUnderrun { consumed: index })?;
        if d.kind() != kind {
            return Err(Error::TapeKindMismatch {
                index: index + 1,
                requested: kind.name(),
                found: d.kind().name(),
            });
        }
        match d {
            ShuffleDecision::Scramble(p) if p.len() != k => {
                return Err(Error::WidthMismatch {
                    expected: k,
                    got: p.len(),
                })
            }
            ShuffleDecision::Shift(r) if *r >= k => {
                return Err(Error::Domain {
                    name: "r",
                    value: *r as i64,
                    expected: format!("0 <= r <= {}", k - 1),
                })
            }
            _ => {}
        }
        self.cursor += 1;
        Ok(d.clone())
    }
}

/// Size of the randomness universe for a list of shuffle kinds, `None` on overflow.
pub fn universe_size(kinds: &[ShuffleKind], k: usize) -> Option<u128> {
    kinds
        .iter()
        .try_fold(1u128, |acc, kind| acc.checked_mul(kind.branches(k)?))
}

/// Every tape in the Cartesian product of the per-shuffle decision sets, in lexicographic order.
pub fn enumerate_tapes(kinds: &[ShuffleKind], k: usize) -> TapeEnumerator {
    TapeEnumerator {
        choices: kinds.iter().map(|kind| kind.all_decisions(k)).collect(),
        odometer: vec![0; kinds.len()],
        done: false,
    }
}

/// Iterator returned by [`enumerate_tapes`].
#[derive(Debug, Clone)]
pub struct TapeEnumerator {
    choices: Vec<Vec<ShuffleDecision>>,
    odometer: Vec<usize>,
    done: bool,
}

impl Iterator for TapeEnumerator {
    type Item = RandomnessTape;

    fn next(&mut self) -> Option<RandomnessTape> {
        if self.done {
            return None;
        }
        let tape = RandomnessTape::new(
            self.odometer
                .iter()
                .zip(&self.choices)
                .map(|(&i, c)| c[i].clone())
                .collect(),
        );
        // advance, last position fastest
        self.done = true;
        for pos in (0..self.odometer.len()).rev() {
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.choices[pos].len() {
                self.done = false;
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(tape)
    }
}
