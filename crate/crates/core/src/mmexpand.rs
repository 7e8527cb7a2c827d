//! Melvin-Morton table extraction and line recovery.
//!
//! For each color `alpha` the invariant expands as
//! `V_alpha(1+h) = sum_{m,n} D_{m,n} alpha^{2m} h^n` where the coefficient of
//! `h^n` is a polynomial in `alpha^2` of degree at most `n/2`.  Sampling
//! enough colors therefore determines the table `D_{m,n}` exactly: for
//! truncation order `M` the colors `1..=(M/2 + 1)` give a square Vandermonde
//! system in `alpha^2`, solved over exact rationals.
//!
//! Rewriting `alpha * h` in the bound-state variable `z` collects the table
//! into lines: `V = sum_n h^n V^(n)(z)` with `V^(n) = sum_m d^(n)_m z^(2m)`,
//! reliable for `2m + n <= M`.  Each line is a rational function
//! `P_n / Delta^(2n+1)` of the Alexander polynomial `Delta`; the numerator is
//! recovered by multiplying the truncated line back up and insisting that the
//! trailing third of the available coefficients vanish exactly.  If they do
//! not, the line is reported as undetermined at this order -- never silently
//! truncated.

use crate::braid::BraidWord;
use crate::burau::alexander_conway;
use crate::exactalg::{alpha_h_in_z, ri, BivarSeries, Rat};
use crate::qtrace::jones_h_series;
use crate::Error;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMTable {
    order: usize,
    samples: Vec<u32>,
    d: BTreeMap<(usize, usize), Rat>,
}

impl MMTable {
    /// `D_{m,n}`; zero outside the computed range.
    pub fn entry(&self, m: usize, n: usize) -> Rat {
        self.d.get(&(m, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn samples(&self) -> &[u32] {
        &self.samples
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.d.iter()
    }
}

/// Exact Gaussian elimination; panics on a singular matrix (the Vandermonde
/// systems here are provably nonsingular).
fn solve_linear(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Vec<Rat> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("internal consistency: singular linear system");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
            let sub = &f * &b[col];
            b[r] -= sub;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for c in (row + 1)..n {
            s -= &a[row][c] * &x[c];
        }
        x[row] = s / &a[row][row];
    }
    x
}

/// Extract the table to order `M` with the default color sample `1..=(M/2+1)`.
pub fn extract_d(braid: &BraidWord, order: usize) -> Result<MMTable, Error> {
    let k = order / 2 + 1;
    let samples: Vec<u32> = (1..=k as u32).collect();
    extract_d_with_samples(braid, order, &samples)
}

/// Same extraction from a caller-chosen set of distinct colors; the result
/// must not depend on the choice (the fit is exact, not least-squares).
pub fn extract_d_with_samples(
    braid: &BraidWord,
    order: usize,
    samples: &[u32],
) -> Result<MMTable, Error> {
    let k = order / 2 + 1;
    if samples.len() != k {
        return Err(Error::BadInput(format!(
            "order {order} needs exactly {k} sample colors, got {}",
            samples.len()
        )));
    }
    let mut distinct = samples.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != k || samples.iter().any(|&a| a == 0) {
        return Err(Error::BadInput("sample colors must be distinct and positive".into()));
    }

    let series: Vec<_> = samples
        .iter()
        .map(|&alpha| jones_h_series(braid, alpha, order))
        .collect::<Result<_, _>>()?;

    // rows of the Vandermonde matrix in x = alpha^2
    let matrix: Vec<Vec<Rat>> = samples
        .iter()
        .map(|&alpha| {
            let x = ri(alpha as i64 * alpha as i64);
            let mut row = Vec::with_capacity(k);
            let mut p = Rat::one();
            for _ in 0..k {
                row.push(p.clone());
                p *= &x;
            }
            row
        })
        .collect();

    let mut d = BTreeMap::new();
    for n in 0..=order {
        let rhs: Vec<Rat> = series.iter().map(|s| s.coeff(n).clone()).collect();
        let solution = solve_linear(matrix.clone(), rhs);
        for (m, v) in solution.into_iter().enumerate() {
            d.insert((m, n), v);
        }
    }
    Ok(MMTable {
        order,
        samples: samples.to_vec(),
        d,
    })
}

/// One line of the expansion: `V^(n) = sum_m d[m] z^(2m)`, reliable for
/// `2m + n <= M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSeries {
    pub n: usize,
    /// coefficient of `z^(2m)` at index `m`
    pub d: Vec<Rat>,
}

/// Rearrange the table in the bound-state variable and slice it into lines.
pub fn to_line_series(table: &MMTable) -> Vec<LineSeries> {
    let m_ord = table.order;
    let a2 = alpha_h_in_z(m_ord, m_ord).pow(2);
    let mut a2_pows = vec![BivarSeries::one(m_ord, m_ord)];
    for _ in 0..(m_ord / 2) {
        a2_pows.push(a2_pows.last().unwrap().mul(&a2));
    }

    let mut v = BivarSeries::new(m_ord, m_ord);
    for n in 0..=m_ord {
        for m in 0..=n / 2 {
            let c = table.entry(m, n);
            if c.is_zero() {
                continue;
            }
            let term = a2_pows[m].scale(&c).mul_h(n - 2 * m).truncate_h(m_ord);
            v = v.add(&term);
        }
    }
    assert!(
        v.is_even_in_z(),
        "internal consistency: line series has odd powers of z"
    );

    let mut out = Vec::new();
    for n in 0..=m_ord {
        let avail = (m_ord - n) / 2;
        let row = v.h_line(n);
        out.push(LineSeries {
            n,
            d: (0..=avail).map(|m| row[2 * m].clone()).collect(),
        });
    }
    out
}

/// Outcome of recovering the numerator `P_n` of one line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineResult {
    pub n: usize,
    /// available prefix of the line, as `z^(2m)` coefficients
    pub d: Vec<Rat>,
    /// recovered numerator, `None` when undetermined at this order
    pub p: Option<Vec<Rat>>,
    /// the residual was verified zero through this power of `z`
    pub residual_zero_z_order: usize,
    /// first `z^2`-index where the stabilization guard failed
    pub undetermined_at: Option<usize>,
    pub d_integral: bool,
    pub p_integral: bool,
}

/// Multiply the truncated line back up by `Delta^(2n+1)` and read off the
/// numerator, requiring the trailing third of the available coefficients to
/// vanish.
pub fn recover_p(braid: &BraidWord, n: usize, table: &MMTable) -> Result<LineResult, Error> {
    if n > table.order {
        return Err(Error::BadInput(format!(
            "line {n} not available at truncation order {}",
            table.order
        )));
    }
    let lines = to_line_series(table);
    let line = &lines[n];
    let delta = alexander_conway(braid)?;

    // (z^2-coefficients of) Delta^(2n+1), exact polynomial
    let mut dpow = vec![Rat::one()];
    for _ in 0..(2 * n + 1) {
        let mut next = vec![Rat::zero(); dpow.len() + delta.coeffs().len() - 1];
        for (i, a) in dpow.iter().enumerate() {
            for (j, b) in delta.coeffs().iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        dpow = next;
    }

    let m_max = line.d.len() - 1;
    let mut candidate = vec![Rat::zero(); m_max + 1];
    for (i, a) in line.d.iter().enumerate() {
        for (j, b) in dpow.iter().enumerate() {
            if i + j > m_max {
                break;
            }
            candidate[i + j] += a * b;
        }
    }

    // stabilization guard: the trailing third of the available coefficients
    let guard = (m_max + 1).div_ceil(3);
    let tail_start = m_max + 1 - guard;
    let undetermined_at = (tail_start..=m_max).find(|&i| !candidate[i].is_zero());
    let residual_zero_z_order = match undetermined_at {
        None => 2 * m_max,
        Some(i) => 2 * i - 2,
    };

    let p = if undetermined_at.is_none() {
        let mut poly = candidate[..tail_start].to_vec();
        while poly.len() > 1 && poly.last().unwrap().is_zero() {
            poly.pop();
        }
        if poly.is_empty() {
            poly.push(Rat::zero());
        }
        Some(poly)
    } else {
        None
    };

    let d_integral = line.d.iter().all(|c| c.denom().is_one());
    let p_integral = p
        .as_ref()
        .map_or(false, |poly| poly.iter().all(|c| c.denom().is_one()));
    Ok(LineResult {
        n,
        d: line.d.clone(),
        p,
        residual_zero_z_order,
        undetermined_at,
        d_integral,
        p_integral,
    })
}

/// Per-claim integrality report; `None` means the claim held everywhere,
/// otherwise the first offending position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    /// `n! * D_{m,n}` is an integer; position `(m, n)`
    pub n_factorial_d: Option<(usize, usize)>,
    /// line coefficients `d^(n)_m` are integers; position `(n, m)`
    pub line_coeffs: Option<(usize, usize)>,
    /// recovered `P_n` coefficients are integers; position `(n, m)`
    pub p_coeffs: Option<(usize, usize)>,
    /// `D_{m,n} = 0` for `2m > n`; position `(m, n)`
    pub mm_bound: Option<(usize, usize)>,
}

impl IntegralityReport {
    pub fn all_ok(&self) -> bool {
        self.n_factorial_d.is_none()
            && self.line_coeffs.is_none()
            && self.p_coeffs.is_none()
            && self.mm_bound.is_none()
    }
}

pub fn check_integrality(table: &MMTable, lines: &[LineResult]) -> IntegralityReport {
    let mut report = IntegralityReport {
        n_factorial_d: None,
        line_coeffs: None,
        p_coeffs: None,
        mm_bound: None,
    };
    for (&(m, n), v) in table.iter() {
        if report.n_factorial_d.is_none() {
            let scaled = v * Rat::from_integer(crate::exactalg::factorial(n as u64));
            if !scaled.denom().is_one() {
                report.n_factorial_d = Some((m, n));
            }
        }
        if report.mm_bound.is_none() && 2 * m > n && !v.is_zero() {
            report.mm_bound = Some((m, n));
        }
    }
    for line in lines {
        if report.line_coeffs.is_none() {
            if let Some(m) = line.d.iter().position(|c| !c.denom().is_one()) {
                report.line_coeffs = Some((line.n, m));
            }
        }
        if report.p_coeffs.is_none() {
            if let Some(poly) = &line.p {
                if let Some(m) = poly.iter().position(|c| !c.denom().is_one()) {
                    report.p_coeffs = Some((line.n, m));
                }
            }
        }
    }
    report
}
