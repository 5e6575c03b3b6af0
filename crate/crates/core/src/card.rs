//! Cards, encoded sequences and the card matrix.
//!
//! All public addressing is 1-based: row 1 is the top row and column 1 the leftmost column.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Suit {
    Club,
    Heart,
}

impl Suit {
    pub fn symbol(self) -> char {
        match self {
            Suit::Club => 'C',
            Suit::Heart => 'H',
        }
    }

    pub fn from_symbol(c: char) -> Option<Suit> {
        match c {
            'C' => Some(Suit::Club),
            'H' => Some(Suit::Heart),
            _ => None,
        }
    }
}

impl fmt::Display for Suit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Facing {
    FaceUp,
    FaceDown,
}

/// A single physical card. The suit is fixed at construction; only the facing can change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Card {
    suit: Suit,
    facing: Facing,
}

impl Card {
    pub fn face_down(suit: Suit) -> Self {
        Card {
            suit,
            facing: Facing::FaceDown,
        }
    }

    pub fn suit(&self) -> Suit {
        self.suit
    }

    pub fn facing(&self) -> Facing {
        self.facing
    }

    pub fn is_face_up(&self) -> bool {
        self.facing == Facing::FaceUp
    }

    pub fn turn_over(&mut self) {
        self.facing = match self.facing {
            Facing::FaceUp => Facing::FaceDown,
            Facing::FaceDown => Facing::FaceUp,
        };
    }

    /// What an observer sees: the suit if the card is face up, nothing otherwise.
    pub fn visible(&self) -> Option<Suit> {
        self.is_face_up().then_some(self.suit)
    }
}

/// A row of suits, printed in the canonical text form (`"HCHH"`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(pub Vec<Suit>);

impl Pattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn clubs(&self) -> usize {
        self.0.iter().filter(|&&s| s == Suit::Club).count()
    }

    pub fn hearts(&self) -> usize {
        self.len() - self.clubs()
    }

    /// 1-based columns holding a club, ascending.
    pub fn club_columns(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Suit::Club)
            .map(|(j, _)| j + 1)
            .collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Suit::from_symbol(c).ok_or_else(|| Error::Domain {
                    name: "suit",
                    value: c as i64,
                    expected: "'C' or 'H'".into(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Pattern)
    }
}

/// A sequence of `k` consecutive cards, as handed over by one player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    cards: Vec<Card>,
}

impl Sequence {
    pub fn new(cards: Vec<Card>) -> Self {
        Sequence { cards }
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn pattern(&self) -> Pattern {
        Pattern(self.cards.iter().map(Card::suit).collect())
    }
}

impl From<&Pattern> for Sequence {
    fn from(p: &Pattern) -> Self {
        Sequence::new(p.0.iter().copied().map(Card::face_down).collect())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern())
    }
}

fn check_modulus(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain {
            name: "k",
            value: k as i64,
            expected: "k >= 2".into(),
        });
    }
    Ok(())
}

/// Encodes `i` as `k` face-down cards: hearts everywhere except a club at position `i + 1`.
pub fn encode(i: usize, k: usize) -> Result<Sequence> {
    check_modulus(k)?;
    if i >= k {
        return Err(Error::Domain {
            name: "i",
            value: i as i64,
            expected: format!("0 <= i <= {}", k - 1),
        });
    }
    let cards = (0..k)
        .map(|j| Card::face_down(if j == i { Suit::Club } else { Suit::Heart }))
        .collect();
    Ok(Sequence { cards })
}

/// Inverse of [`encode`].
pub fn decode(s: &Sequence) -> Result<usize> {
    let clubs = s.pattern().club_columns();
    match clubs.as_slice() {
        [c] => Ok(c - 1),
        _ => Err(Error::MalformedSequence { clubs: clubs.len() }),
    }
}

/// The players' private values `a_1..a_n`, each in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputVector {
    values: Vec<usize>,
    k: usize,
}

impl InputVector {
    pub fn new(values: Vec<usize>, k: usize) -> Result<Self> {
        check_modulus(k)?;
        if values.is_empty() {
            return Err(Error::Domain {
                name: "n",
                value: 0,
                expected: "n >= 1".into(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= k) {
            return Err(Error::Domain {
                name: "input",
                value: bad as i64,
                expected: format!("0 <= a_i <= {}", k - 1),
            });
        }
        Ok(InputVector { values, k })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Every input vector of length `n` over `0..k`, in lexicographic order.
    pub fn all(k: usize, n: usize) -> impl Iterator<Item = InputVector> {
        let total = (k as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut values = vec![0; n];
            for slot in values.iter_mut().rev() {
                *slot = (idx % k as u64) as usize;
                idx /= k as u64;
            }
            InputVector { values, k }
        })
    }
}

impl fmt::Display for InputVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A rectangular grid of cards. Each column also carries the label it had when the matrix was
/// built, so that column movements stay traceable through shuffles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardMatrix {
    rows: usize,
    cols: usize,
    grid: Vec<Card>,
    labels: Vec<usize>,
}

impl CardMatrix {
    pub fn from_sequences(sequences: &[Sequence]) -> Result<Self> {
        let cols = sequences.first().map_or(0, Sequence::len);
        check_modulus(cols)?;
        if let Some(bad) = sequences.iter().find(|s| s.len() != cols) {
            return Err(Error::Domain {
                name: "row length",
                value: bad.len() as i64,
                expected: format!("every row has {cols} cards"),
            });
        }
        Ok(CardMatrix {
            rows: sequences.len(),
            cols,
            grid: sequences.iter().flat_map(|s| s.cards.iter().copied()).collect(),
            labels: (1..=cols).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn index(&self, row: usize, col: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "cell ({row},{col}) outside {}x{} matrix",
            self.rows,
            self.cols
        );
        (row - 1) * self.cols + (col - 1)
    }

    /// The card at `M(row, col)`, 1-based.
    pub fn card(&self, row: usize, col: usize) -> &Card {
        &self.grid[self.index(row, col)]
    }

    pub fn row(&self, row: usize) -> &[Card] {
        let start = self.index(row, 1);
        &self.grid[start..start + self.cols]
    }

    pub fn row_pattern(&self, row: usize) -> Pattern {
        Pattern(self.row(row).iter().map(Card::suit).collect())
    }

    /// Original labels of the columns, read left to right.
    pub fn column_labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cards(&self) -> impl Iterator<Item = &Card> {
        self.grid.iter()
    }

    pub fn count_suit(&self, suit: Suit) -> usize {
        self.grid.iter().filter(|c| c.suit() == suit).count()
    }

    pub fn face_up_count(&self) -> usize {
        self.grid.iter().filter(|c| c.is_face_up()).count()
    }

    pub fn turn_over_row(&mut self, row: usize) {
        let start = self.index(row, 1);
        for card in &mut self.grid[start..start + self.cols] {
            card.turn_over();
        }
    }

    pub fn turn_over_face_up(&mut self) {
        for card in self.grid.iter_mut().filter(|c| c.is_face_up()) {
            card.turn_over();
        }
    }

    pub fn swap_cards(&mut self, a: (usize, usize), b: (usize, usize)) {
        let (ia, ib) = (self.index(a.0, a.1), self.index(b.0, b.1));
        self.grid.swap(ia, ib);
    }

    /// Moves source column `j` (0-based) to destination `dest[j]` (0-based).
    pub(crate) fn move_columns(&self, dest: &[usize]) -> CardMatrix {
        debug_assert_eq!(dest.len(), self.cols);
        let mut out = self.clone();
        for r in 0..self.rows {
            let base = r * self.cols;
            for (src, &d) in dest.iter().enumerate() {
                out.grid[base + d] = self.grid[base + src];
            }
        }
        for (src, &d) in dest.iter().enumerate() {
            out.labels[d] = self.labels[src];
        }
        out
    }

    /// The public view: face-up suits, `None` for face-down cards.
    pub fn public_view(&self) -> Vec<Vec<Option<Suit>>> {
        self.grid
            .chunks(self.cols)
            .map(|row| row.iter().map(Card::visible).collect())
            .collect()
    }
}

/// Stacks `E_k(a_i)` for every input, plus `E_k(0)` as an extra bottom row when requested.
pub fn build_matrix(inputs: &InputVector, extra_zero_row: bool) -> Result<CardMatrix> {
    let k = inputs.k();
    let mut rows = inputs
        .values()
        .iter()
        .map(|&a| encode(a, k))
        .collect::<Result<Vec<_>>>()?;
    if extra_zero_row {
        rows.push(encode(0, k)?);
    }
    CardMatrix::from_sequences(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(1, 4).unwrap().to_string(), "HCHH");
        assert_eq!(encode(0, 2).unwrap().to_string(), "CH");
        assert_eq!(encode(5, 6).unwrap().to_string(), "HHHHHC");
        assert!(encode(0, 6).unwrap().cards().iter().all(|c| !c.is_face_up()));
    }

    #[test]
    fn encode_rejects_bad_values() {
        assert!(matches!(
            encode(4, 4),
            Err(Error::Domain { name: "i", value: 4, .. })
        ));
        assert!(matches!(
            encode(0, 1),
            Err(Error::Domain { name: "k", value: 1, .. })
        ));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&Sequence::from(&pat("HCHH"))).unwrap(), 1);
        assert_eq!(decode(&Sequence::from(&pat("CH"))).unwrap(), 0);
        assert_eq!(decode(&Sequence::from(&pat("HHC"))).unwrap(), 2);
    }

    #[test]
    fn decode_rejects_malformed() {
        assert_eq!(
            decode(&Sequence::from(&pat("HHH"))),
            Err(Error::MalformedSequence { clubs: 0 })
        );
        assert_eq!(
            decode(&Sequence::from(&pat("CHC"))),
            Err(Error::MalformedSequence { clubs: 2 })
        );
    }

    #[test]
    fn build_matrix_example_grid() {
        let inputs = InputVector::new(vec![2, 3, 2, 0, 2], 6).unwrap();
        let m = build_matrix(&inputs, false).unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 6));
        let club_cols: Vec<usize> = (1..=5).map(|r| m.row_pattern(r).club_columns()[0]).collect();
        assert_eq!(club_cols, vec![3, 4, 3, 1, 3]);
        assert_eq!(m.face_up_count(), 0);
        assert_eq!(m.count_suit(Suit::Club), 5);
    }

    #[test]
    fn build_matrix_extra_row() {
        let m = build_matrix(&InputVector::new(vec![0], 2).unwrap(), true).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.row_pattern(1).to_string(), "CH");
        assert_eq!(m.row_pattern(2).to_string(), "CH");

        let m = build_matrix(&InputVector::new(vec![1, 1], 3).unwrap(), false).unwrap();
        assert_eq!(m.row_pattern(1).to_string(), "HCH");
        assert_eq!(m.row_pattern(2).to_string(), "HCH");
    }

    #[test]
    fn input_vector_validation() {
        assert!(InputVector::new(vec![], 3).is_err());
        assert!(InputVector::new(vec![3], 3).is_err());
        assert!(InputVector::new(vec![0], 1).is_err());
        assert!(InputVector::new(vec![2], 3).is_ok());
    }

    #[test]
    fn all_inputs_are_lexicographic() {
        let all: Vec<Vec<usize>> = InputVector::all(2, 2).map(|v| v.values().to_vec()).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(InputVector::all(3, 3).count(), 27);
    }

    #[test]
    fn turning_over_only_changes_facing() {
        let mut card = Card::face_down(Suit::Club);
        assert_eq!(card.visible(), None);
        card.turn_over();
        assert_eq!(card.visible(), Some(Suit::Club));
        assert_eq!(card.suit(), Suit::Club);
    }
}
