//! Braid words, their closure permutations, and the writhe bookkeeping the
//! invariants need.
//!
//! A word on `N` strands is a list of nonzero letters; letter `j` (resp.
//! `-j`), with `1 <= j <= N-1`, is a positive (resp. negative) crossing of
//! strands `j` and `j+1`.  Letters act left to right: the first letter of the
//! word is the first crossing applied.

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureInfo {
    /// `permutation[p]` is the final position of the strand entering at `p`.
    pub permutation: Vec<usize>,
    /// Cycles of the permutation, i.e. the components of the closure.
    pub cycles: Vec<Vec<usize>>,
    /// Sum of letter signs.
    pub writhe: i64,
}

impl ClosureInfo {
    pub fn is_knot(&self) -> bool {
        self.cycles.len() == 1
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::BadInput("strand count must be positive".into()));
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::BadInput("braid letter 0 is not allowed".into()));
            }
            let j = l.unsigned_abs() as usize;
            if j > strands - 1 {
                return Err(Error::BadInput(format!(
                    "letter {l} needs at least {} strands, word declared {strands}",
                    j + 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse a comma-separated word like `"1,-2,1,-2"`.  An empty (or
    /// all-whitespace) string is the empty word.
    pub fn parse(text: &str, strands: usize) -> Result<Self, Error> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Self::new(strands, Vec::new());
        }
        let mut letters = Vec::new();
        for piece in trimmed.split(',') {
            let piece = piece.trim();
            let l: i32 = piece
                .parse()
                .map_err(|_| Error::BadInput(format!("cannot read braid letter {piece:?}")))?;
            letters.push(l);
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }

    /// The mirror braid: every crossing flipped.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|&l| -l).collect(),
        }
    }

    pub fn closure(&self) -> ClosureInfo {
        let n = self.strands;
        let mut perm: Vec<usize> = (0..n).collect();
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize; // crossing of positions j-1, j
            perm.swap(j - 1, j);
        }
        // perm currently maps final position -> entering strand; invert to
        // map entering strand -> final position.
        let mut inverse = vec![0usize; n];
        for (pos, &start) in perm.iter().enumerate() {
            inverse[start] = pos;
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = inverse[p];
            }
            cycles.push(cycle);
        }
        ClosureInfo {
            permutation: inverse,
            cycles,
            writhe: self.writhe(),
        }
    }

    /// Require the closure to be a knot, or report its components.
    pub fn require_knot(&self) -> Result<ClosureInfo, Error> {
        let info = self.closure();
        if info.is_knot() {
            Ok(info)
        } else {
            Err(Error::NotAKnot {
                cycles: info.cycles,
            })
        }
    }

    /// Exponent `(N - 1 - e)/2` used to symmetrize determinant-type outputs
    /// (`N` strands, writhe `e`).  For a knot closure `N - 1 - e` is even.
    pub fn symmetrization_exponent(&self) -> i64 {
        let p = self.strands as i64 - 1 - self.writhe();
        assert!(
            p % 2 == 0,
            "strands - 1 - writhe is odd; the closure cannot be a knot"
        );
        p / 2
    }
}
