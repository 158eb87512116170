//! Braid words whose closures are knots, with the symmetry transforms.
//!
//! Letter `+i` is the positive crossing of strands `i` and `i + 1`, `-i`
//! its inverse. Strands run top to bottom.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("letter {letter} is out of range for {strands} strands")]
    BadLetter { letter: i32, strands: usize },
    #[error("closure has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("malformed braid record: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(&letter) = letters.iter().find(|&&w| w == 0 || w.unsigned_abs() as usize >= strands) {
            return Err(BraidError::BadLetter { letter, strands });
        }
        let b = BraidWord { strands, letters };
        let components = b.closure_components();
        if components != 1 {
            return Err(BraidError::NotAKnot { components });
        }
        Ok(b)
    }

    pub fn unknot() -> Self {
        BraidWord { strands: 1, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// `perm[p]`: the bottom position reached by the strand starting at top
    /// position `p`.
    pub fn strand_permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &w in &self.letters {
            let i = w.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    fn closure_components(&self) -> usize {
        let perm = self.strand_permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        count
    }

    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|w| -w).collect() }
    }

    /// Rotation by π in the diagram plane: order reversed, `i ↦ n − i`.
    pub fn reverse(&self) -> Self {
        let n = self.strands as i32;
        let letters = self.letters.iter().rev().map(|&w| w.signum() * (n - w.abs())).collect();
        BraidWord { strands: self.strands, letters }
    }

    pub fn reverse_mirror(&self) -> Self {
        self.reverse().mirror()
    }

    /// The braid word of the inverse braid: reversed, letters negated.
    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|w| -w).collect() }
    }

    /// `self # other` on `m + n − 1` strands.
    pub fn connected_sum(&self, other: &BraidWord) -> Self {
        let shift = self.strands as i32 - 1;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&w| w.signum() * (w.abs() + shift)));
        BraidWord { strands: self.strands + other.strands - 1, letters }
    }

    /// Markov stabilization: one more strand and the letter `±n`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }
}

impl fmt::Display for BraidWord {
    /// `<n> <k> <w1> … <wk>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.strands, self.letters.len())?;
        for w in &self.letters {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `<n> <k> <w1> … <wk>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let nums: Vec<i64> = s
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| BraidError::Parse(format!("not an integer: {t:?}"))))
            .collect::<Result<_, _>>()?;
        let (&n, rest) = nums.split_first().ok_or_else(|| BraidError::Parse("missing strand count".into()))?;
        let (&k, letters) = rest.split_first().ok_or_else(|| BraidError::Parse("missing letter count".into()))?;
        if n < 1 || n > i32::MAX as i64 {
            return Err(BraidError::NoStrands);
        }
        if k < 0 || letters.len() as i64 != k {
            return Err(BraidError::Parse(format!("expected {k} letters, found {}", letters.len())));
        }
        let letters = letters
            .iter()
            .map(|&w| i32::try_from(w).map_err(|_| BraidError::BadLetter { letter: 0, strands: n as usize }))
            .collect::<Result<_, _>>()?;
        BraidWord::new(n as usize, letters)
    }
}

/// A braid with the name it was recorded under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedBraid {
    pub name: String,
    pub braid: BraidWord,
}

/// Parses `knot <name> <n> <k> <w1> … <wk>`.
pub fn parse_braid(text: &str) -> Result<NamedBraid, BraidError> {
    let text = text.split('#').next().unwrap_or("").trim();
    let mut it = text.splitn(3, char::is_whitespace);
    if it.next() != Some("knot") {
        return Err(BraidError::Parse("expected `knot`".into()));
    }
    let name = it.next().filter(|s| !s.is_empty()).ok_or_else(|| BraidError::Parse("missing name".into()))?;
    let braid = it.next().unwrap_or("").parse()?;
    Ok(NamedBraid { name: name.to_string(), braid })
}

impl fmt::Display for NamedBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "knot {} {}", self.name, self.braid)
    }
}
