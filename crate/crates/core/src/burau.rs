//! Burau matrices and the Alexander-Conway polynomial.
//!
//! A positive crossing of adjacent strands acts on the strand coordinates by
//! the 2x2 block `[[1-t, t], [1, 0]]` (columns are images); a negative one by
//! its exact inverse `[[0, 1], [1/t, 1-1/t]]`.  Words act first letter first,
//! so the accumulated matrix is `M(last) * ... * M(first)`.  Breaking the
//! first strand deletes row and column one of the product; the Alexander
//! polynomial is `t^((N-1-e)/2) * det(1 - reduced)`, which is symmetric under
//! `t <-> 1/t` and lands in `Z[z^2]` after the change of variable
//! `t + 1/t = z^2 + 2`.

use crate::braid::BraidWord;
use crate::exactalg::{ri, Laurent, Rat};
use crate::Error;
use num_traits::{One, Zero};

/// Small dense matrix over Laurent polynomials, columns-are-images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LMat {
    n: usize,
    rows: Vec<Vec<Laurent>>,
}

impl LMat {
    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Laurent::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Laurent::one();
        }
        LMat { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Laurent {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.rows[i][j] = v;
    }

    pub fn mul(&self, rhs: &LMat) -> LMat {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = LMat {
            n,
            rows: vec![vec![Laurent::zero(); n]; n],
        };
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if rhs.rows[k][j].is_zero() {
                        continue;
                    }
                    let add = self.rows[i][k].clone() * rhs.rows[k][j].clone();
                    out.rows[i][j] = std::mem::replace(&mut out.rows[i][j], Laurent::zero()) + add;
                }
            }
        }
        out
    }

    /// Drop row 0 and column 0 (break the first strand).
    pub fn delete_first(&self) -> LMat {
        assert!(self.n >= 1);
        LMat {
            n: self.n - 1,
            rows: self.rows[1..]
                .iter()
                .map(|r| r[1..].to_vec())
                .collect(),
        }
    }

    /// `I - self`.
    pub fn id_minus(&self) -> LMat {
        let mut out = LMat::identity(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.rows[i][j] =
                    std::mem::replace(&mut out.rows[i][j], Laurent::zero()) - self.rows[i][j].clone();
            }
        }
        out
    }

    /// Exact determinant by cofactor expansion along the first row.  The
    /// matrices here are tiny (strand counts), so no elimination is needed.
    pub fn det(&self) -> Laurent {
        match self.n {
            0 => Laurent::one(),
            1 => self.rows[0][0].clone(),
            _ => {
                let mut acc = Laurent::zero();
                for j in 0..self.n {
                    if self.rows[0][j].is_zero() {
                        continue;
                    }
                    let minor = LMat {
                        n: self.n - 1,
                        rows: self.rows[1..]
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .enumerate()
                                    .filter(|(c, _)| *c != j)
                                    .map(|(_, v)| v.clone())
                                    .collect()
                            })
                            .collect(),
                    };
                    let term = self.rows[0][j].clone() * minor.det();
                    acc = if j % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }
}

/// The unreduced matrix of a single letter on `n` strands.
pub fn burau_letter(n: usize, letter: i32) -> LMat {
    assert!(letter != 0);
    let j = letter.unsigned_abs() as usize;
    assert!(j < n, "letter {letter} out of range for {n} strands");
    let mut m = LMat::identity(n);
    let (a, b) = (j - 1, j);
    let t = Laurent::term(1, ri(1));
    let tinv = Laurent::term(-1, ri(1));
    if letter > 0 {
        // [[1-t, t], [1, 0]]
        m.set(a, a, Laurent::one() - t.clone());
        m.set(a, b, t);
        m.set(b, a, Laurent::one());
        m.set(b, b, Laurent::zero());
    } else {
        // [[0, 1], [1/t, 1-1/t]]
        m.set(a, a, Laurent::zero());
        m.set(a, b, Laurent::one());
        m.set(b, a, tinv.clone());
        m.set(b, b, Laurent::one() - tinv);
    }
    m
}

/// Product over the whole word, first letter rightmost.
pub fn burau_product(braid: &BraidWord) -> LMat {
    let mut p = LMat::identity(braid.strands());
    for &letter in braid.letters() {
        p = burau_letter(braid.strands(), letter).mul(&p);
    }
    p
}

/// The word's product with the first strand broken.
pub fn reduced_burau(braid: &BraidWord) -> LMat {
    burau_product(braid).delete_first()
}

/// Alexander-Conway polynomial in the variable `z^2`, constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayPolynomial {
    z2: Vec<Rat>,
}

impl ConwayPolynomial {
    /// Coefficients of `1, z^2, z^4, ...`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.z2
    }

    pub fn from_z2_coeffs(z2: Vec<Rat>) -> Self {
        let mut z2 = z2;
        while z2.len() > 1 && z2.last().map_or(false, |c| c.is_zero()) {
            z2.pop();
        }
        let p = ConwayPolynomial { z2 };
        assert!(!p.z2.is_empty() && p.z2[0].is_one(), "constant term must be 1");
        assert!(
            p.z2.iter().all(|c| c.denom().is_one()),
            "coefficients must be integers"
        );
        p
    }

    /// Degree in `z` (twice the `z^2` degree).
    pub fn z_degree(&self) -> usize {
        2 * (self.z2.len() - 1)
    }

    /// Evaluate the symmetric Laurent form `t^w * det`, i.e. map back to
    /// `t`-coordinates using `z^2 = t - 2 + 1/t`.
    pub fn to_symmetric_laurent(&self) -> Laurent {
        let zsq = Laurent::from_int_pairs(&[(1, 1), (0, -2), (-1, 1)]);
        let mut acc = Laurent::zero();
        for (k, c) in self.z2.iter().enumerate() {
            acc = acc + Laurent::constant(c.clone()) * zsq.pow(k);
        }
        acc
    }
}

/// Rewrite a `t <-> 1/t` symmetric Laurent polynomial as a polynomial in
/// `z^2` where `t + 1/t = z^2 + 2`.  Panics if the input is not symmetric:
/// symmetry is a theorem about the quantities fed in here, not a convention.
pub fn symmetric_laurent_to_z2(f: &Laurent) -> Vec<Rat> {
    assert!(f.is_symmetric(), "not symmetric under t <-> 1/t: {f}");
    let top = f.max_exp().unwrap_or(0).max(0) as usize;
    // p[k] = t^k + t^(-k) as a polynomial in y = t + 1/t:
    // p[0] = 2, p[1] = y, p[k+1] = y*p[k] - p[k-1]
    let mut p: Vec<Vec<Rat>> = vec![vec![ri(2)], vec![ri(0), ri(1)]];
    for k in 1..top {
        let mut next = vec![Rat::zero(); k + 2];
        for (i, c) in p[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in p[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        p.push(next);
    }
    // assemble in y, then substitute y = z^2 + 2
    let mut in_y = vec![Rat::zero(); top + 1];
    in_y[0] = f.coeff(0);
    for k in 1..=top {
        let c = f.coeff(k as i64);
        if c.is_zero() {
            continue;
        }
        for (i, pc) in p[k].iter().enumerate() {
            in_y[i] += &c * pc;
        }
    }
    let mut out = vec![Rat::zero(); top + 1];
    // Horner in y from the top: out = out*(z^2+2) + c_k, where multiplying by
    // (z^2 + 2) shifts up and doubles in place.
    for c in in_y.iter().rev() {
        let mut shifted = vec![Rat::zero(); top + 1];
        for i in (1..=top).rev() {
            shifted[i] = out[i - 1].clone();
        }
        for i in 0..=top {
            shifted[i] += &out[i] * ri(2);
        }
        shifted[0] += c;
        out = shifted;
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// Alexander-Conway polynomial of the braid closure.
pub fn alexander_conway(braid: &BraidWord) -> Result<ConwayPolynomial, Error> {
    braid.require_knot()?;
    let det = reduced_burau(braid).id_minus().det();
    let symmetric = Laurent::term(braid.symmetrization_exponent(), ri(1)) * det;
    assert!(
        symmetric.is_symmetric(),
        "internal consistency: symmetrized determinant is not symmetric: {symmetric}"
    );
    Ok(ConwayPolynomial::from_z2_coeffs(symmetric_laurent_to_z2(
        &symmetric,
    )))
}

/// Closed-form Alexander-Conway polynomial of the `(2, 2k+1)` torus knot:
/// the alternating sum `sum_{j=-k..k} (-1)^(k-j) t^j`, written in `z^2`.
/// Completely independent of the Burau pipeline above.
pub fn torus2_oracle(k: u32) -> ConwayPolynomial {
    let mut f = Laurent::zero();
    for j in -(k as i64)..=(k as i64) {
        let sign = if (k as i64 - j) % 2 == 0 { 1 } else { -1 };
        f.add_term(j, ri(sign));
    }
    ConwayPolynomial::from_z2_coeffs(symmetric_laurent_to_z2(&f))
}
