//! Generators for the two families of coupling polynomials that appear in
//! the per-crossing operator expansion.
//!
//! Everything is driven by the two elementary series
//!
//! ```text
//! ((1+h)^l - 1)/h  =  l * (1 + sum_{k>=1} h^k prod_{i=1..k}(l-i) / (k+1)!)
//! ((1+h)^-l - 1)/h =  sum_{k>=0} h^k (-1)^(k+1) prod_{i=0..k}(l+i) / (k+1)!
//! ```
//!
//! * `gen_t_r2(j)`: take the logarithm of the first series, sum the
//!   polynomial-in-`l` coefficients in closed form (Faulhaber), exponentiate,
//!   and read off the `h^j` coefficient -- a polynomial in `(m, n)` of degree
//!   at most `2j`.
//! * `gen_t_r1(j, k)`: build `S_j(m1, m2; h)` -- the elementary symmetric
//!   function of the second series over the window `l in (m1, m2]` -- by the
//!   window recursion, pull out the forced factor `prod_{i<j}(m2 - m1 - i)`
//!   by exact synthetic division (any remainder is a hard error), and read
//!   off the `h^k` coefficient -- degree at most `j + k`.

use crate::exactalg::{binom, ri, rq, Rat, Ring, TruncSeries};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyU(Vec<Rat>);

impl PolyU {
    pub fn from_coeffs(c: Vec<Rat>) -> Self {
        let mut p = PolyU(c);
        p.trim();
        p
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    fn trim(&mut self) {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.0.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, f: &Rat) -> Self {
        Self::from_coeffs(self.0.iter().map(|c| c * f).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Debug for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyU{:?}", self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl Add for PolyU {
    type Output = PolyU;
    fn add(self, rhs: PolyU) -> PolyU {
        let n = self.0.len().max(rhs.0.len());
        let mut c = vec![Rat::zero(); n];
        for (i, v) in self.0.into_iter().enumerate() {
            c[i] += v;
        }
        for (i, v) in rhs.0.into_iter().enumerate() {
            c[i] += v;
        }
        PolyU::from_coeffs(c)
    }
}

impl Sub for PolyU {
    type Output = PolyU;
    fn sub(self, rhs: PolyU) -> PolyU {
        self + (-rhs)
    }
}

impl Neg for PolyU {
    type Output = PolyU;
    fn neg(self) -> PolyU {
        PolyU(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Mul for PolyU {
    type Output = PolyU;
    fn mul(self, rhs: PolyU) -> PolyU {
        if self.0.is_empty() || rhs.0.is_empty() {
            return PolyU::default();
        }
        let mut c = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyU::from_coeffs(c)
    }
}

impl Zero for PolyU {
    fn zero() -> Self {
        PolyU::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for PolyU {
    fn one() -> Self {
        PolyU::constant(Rat::one())
    }
}

impl Ring for PolyU {
    fn exact_div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "exact_div: zero divisor");
        if self.is_zero() {
            return PolyU::default();
        }
        assert!(self.degree() >= rhs.degree(), "exact_div: degree too small");
        let mut rem = self.0.clone();
        let dl = rhs.degree();
        let lead = rhs.0[dl].clone();
        let mut quot = vec![Rat::zero(); rem.len() - dl];
        for qi in (0..quot.len()).rev() {
            let c = &rem[qi + dl] / &lead;
            if !c.is_zero() {
                for (i, b) in rhs.0.iter().enumerate() {
                    let sub = &c * b;
                    rem[qi + i] -= sub;
                }
            }
            quot[qi] = c;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "exact_div: nonzero remainder"
        );
        PolyU::from_coeffs(quot)
    }
}

/// Sparse bivariate polynomial over the rationals; the meaning of the two
/// slots is contextual (`(m, n)` or `(m1, m2)`).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly2 {
    pub fn term(dx: u32, dy: u32, c: Rat) -> Self {
        let mut p = Poly2::default();
        p.add_term(dx, dy, c);
        p
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(0, 0, c)
    }

    pub fn add_term(&mut self, dx: u32, dy: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((dx, dy)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rat {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn scale(&self, f: &Rat) -> Self {
        let mut out = Poly2::default();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c * f);
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (&(a, b), c) in &self.terms {
            let mut term = c.clone();
            for _ in 0..a {
                term *= x;
            }
            for _ in 0..b {
                term *= y;
            }
            acc += term;
        }
        acc
    }

    /// Embed a univariate polynomial as a polynomial in the first slot.
    pub fn from_x(p: &PolyU) -> Self {
        let mut out = Poly2::default();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// Embed in the second slot.
    pub fn from_y(p: &PolyU) -> Self {
        let mut out = Poly2::default();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(0, i as u32, c.clone());
        }
        out
    }

    /// Substitute `x - y` for the variable of a univariate polynomial.
    pub fn from_x_minus_y(p: &PolyU) -> Self {
        let mut out = Poly2::default();
        for (r, c) in p.coeffs().iter().enumerate() {
            // (x - y)^r
            for i in 0..=r {
                let b = binom(r as i64, i as u64);
                let sign = if (r - i) % 2 == 0 { 1 } else { -1 };
                out.add_term(i as u32, (r - i) as u32, c * b * ri(sign));
            }
        }
        out
    }

    /// Substitute `y -> y + c` (used for window endpoints like `l - 1`).
    pub fn shift_y(&self, c: i64) -> Self {
        let mut out = Poly2::default();
        for (&(a, b), v) in &self.terms {
            for i in 0..=b {
                let w = binom(b as i64, (b - i) as u64) * ri(c).pow((b - i) as i32) * v;
                out.add_term(a, i, w);
            }
        }
        out
    }

    /// Substitute `y -> x` (collapse onto the diagonal).
    pub fn collapse_y_to_x(&self) -> Self {
        let mut out = Poly2::default();
        for (&(a, b), v) in &self.terms {
            out.add_term(a + b, 0, v.clone());
        }
        out
    }

    /// Replace every power `y^r` by the closed-form power sum
    /// `S_r(y) = sum_{l=1..y} l^r`, i.e. turn `f(x, l)` into
    /// `F(x, y) = sum_{l=1..y} f(x, l)`.
    pub fn faulhaber_y(&self) -> Self {
        let top = self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0);
        let sums = power_sum_polys(top as usize);
        let mut out = Poly2::default();
        for (&(a, b), v) in &self.terms {
            for (i, c) in sums[b as usize].coeffs().iter().enumerate() {
                out.add_term(a, i as u32, c * v);
            }
        }
        out
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| format!("{c}*x^{a}*y^{b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        for ((a, b), c) in rhs.terms {
            self.add_term(a, b, c);
        }
        self
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        self + (-rhs)
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        let mut out = Poly2::default();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Zero for Poly2 {
    fn zero() -> Self {
        Poly2::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly2 {
    fn one() -> Self {
        Poly2::constant(Rat::one())
    }
}

impl Ring for Poly2 {
    fn exact_div(&self, rhs: &Self) -> Self {
        // only constant divisors arise through the generic series code
        assert_eq!(
            rhs.terms.len(),
            1,
            "Poly2::exact_div supports constant divisors only"
        );
        let c = rhs.coeff(0, 0);
        assert!(!c.is_zero(), "Poly2::exact_div: divisor has no constant term");
        self.scale(&(Rat::one() / c))
    }
}

/// Closed-form power sums `S_r(x) = sum_{l=1..x} l^r` for `r = 0..=top`,
/// from the telescoping identity
/// `(x+1)^(r+1) - 1 = sum_{j<=r} C(r+1, j) S_j(x)`.
pub fn power_sum_polys(top: usize) -> Vec<PolyU> {
    let mut sums: Vec<PolyU> = Vec::with_capacity(top + 1);
    for r in 0..=top {
        // (x+1)^(r+1) - 1
        let mut lead = vec![Rat::zero(); r + 2];
        for (i, c) in lead.iter_mut().enumerate() {
            *c = binom(r as i64 + 1, i as u64);
        }
        lead[0] -= Rat::one();
        let mut p = PolyU::from_coeffs(lead);
        for (j, s) in sums.iter().enumerate() {
            let f = binom(r as i64 + 1, j as u64);
            p = p - s.scale(&f);
        }
        sums.push(p.scale(&(Rat::one() / ri(r as i64 + 1))));
    }
    sums
}

/// `exp` of a truncated series with zero constant term, over any coefficient
/// ring that embeds the rationals by scaling.
fn exp_series_poly2(s: &TruncSeries<Poly2>) -> TruncSeries<Poly2> {
    assert!(s.coeff(0).is_zero());
    let order = s.order();
    let mut acc = TruncSeries::<Poly2>::one(order);
    let mut pow = TruncSeries::<Poly2>::one(order);
    let mut inv_fact = Rat::one();
    for r in 1..=order {
        pow = pow.mul(s);
        inv_fact = inv_fact / ri(r as i64);
        let mut scaled = pow.clone();
        for k in 0..=order {
            scaled.set(k, scaled.coeff(k).scale(&inv_fact));
        }
        acc = acc.add(&scaled);
    }
    acc
}

/// `h`-series of `((1+h)^l - 1) / (h l)` with polynomial-in-`l` coefficients
/// in the second slot of a [`Poly2`].
fn up_series_over_l(order: usize) -> TruncSeries<Poly2> {
    let mut s = TruncSeries::<Poly2>::one(order);
    for k in 1..=order {
        // prod_{i=1..k}(l - i) / (k+1)!
        let mut p = PolyU::one();
        for i in 1..=k {
            p = p * PolyU::from_coeffs(vec![ri(-(i as i64)), ri(1)]);
        }
        let c = Rat::one() / Rat::from_integer(crate::exactalg::factorial(k as u64 + 1));
        s.set(k, Poly2::from_y(&p.scale(&c)));
    }
    s
}

/// `h`-series of `((1+h)^-l - 1) / h`, coefficients polynomial in `l`
/// (second slot).
fn down_series_over_l(order: usize) -> TruncSeries<Poly2> {
    let mut s = TruncSeries::<Poly2>::new(order);
    for k in 0..=order {
        // (-1)^(k+1) prod_{i=0..k}(l + i) / (k+1)!
        let mut p = PolyU::one();
        for i in 0..=k {
            p = p * PolyU::from_coeffs(vec![ri(i as i64), ri(1)]);
        }
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let c = ri(sign) / Rat::from_integer(crate::exactalg::factorial(k as u64 + 1));
        s.set(k, Poly2::from_y(&p.scale(&c)));
    }
    s
}

/// `T^(R,2)_j(m, n)`: the `h^j` coefficient of the quotient of rising
/// products, with the combinatorial prefactor already stripped.
pub fn gen_t_r2(j: usize) -> Poly2 {
    assert!(j >= 1);
    let order = j;
    // log of the normalized series: log(1 + sum_{k>=1} ...)
    let up = up_series_over_l(order);
    let mut tail = up.clone();
    tail.set(0, Poly2::zero());
    // log(1 + tail) = sum_r (-1)^(r+1) tail^r / r
    let mut logv = TruncSeries::<Poly2>::new(order);
    let mut pow = TruncSeries::<Poly2>::one(order);
    for r in 1..=order {
        pow = pow.mul(&tail);
        let sign = if r % 2 == 1 { 1 } else { -1 };
        let f = rq(sign, r as i64);
        let mut scaled = pow.clone();
        for k in 0..=order {
            scaled.set(k, scaled.coeff(k).scale(&f));
        }
        logv = logv.add(&scaled);
    }
    // p_j(l) = h^j coefficient; sum in closed form over the three windows:
    // c_j(m, n) = P_j(m) - P_j(m - n) - P_j(n)
    let mut c_series = TruncSeries::<Poly2>::new(order);
    for jj in 1..=order {
        let pj = {
            // logv coeff jj is a polynomial in l (second slot); lift to PolyU
            let mut p = vec![Rat::zero(); 1];
            for (&(a, b), v) in logv.coeff(jj).iter() {
                assert_eq!(a, 0, "log coefficients must be pure in l");
                if p.len() <= b as usize {
                    p.resize(b as usize + 1, Rat::zero());
                }
                p[b as usize] += v;
            }
            PolyU::from_coeffs(p)
        };
        let big = {
            // P_j as univariate polynomial
            let sums = power_sum_polys(pj.degree());
            let mut acc = PolyU::default();
            for (r, c) in pj.coeffs().iter().enumerate() {
                acc = acc + sums[r].scale(c);
            }
            acc
        };
        let c_j = Poly2::from_x(&big) - Poly2::from_x_minus_y(&big) - Poly2::from_y(&big);
        c_series.set(jj, c_j);
    }
    let t = exp_series_poly2(&c_series);
    let out = t.coeff(j).clone();
    assert!(
        out.total_degree() <= 2 * j as u32,
        "degree bound violated for T^(R,2)_{j}"
    );
    out
}

/// `S_j(m1, m2; h)` by the window recursion, as an `h`-series of bivariate
/// polynomials in `(m1, m2)`.
fn s_window(j: usize, order: usize) -> TruncSeries<Poly2> {
    let down = down_series_over_l(order);
    let mut s = TruncSeries::<Poly2>::one(order);
    for _ in 0..j {
        // summand(l) = S_prev(m1, l-1; h) * down(l)
        let mut summand = TruncSeries::<Poly2>::new(order);
        for k in 0..=order {
            summand.set(k, s.coeff(k).shift_y(-1));
        }
        let summand = summand.mul(&down);
        // sum l = m1+1 .. m2, in closed form per h-coefficient
        let mut next = TruncSeries::<Poly2>::new(order);
        for k in 0..=order {
            let f = summand.coeff(k).faulhaber_y();
            let at_m2 = f.clone();
            let at_m1 = f.collapse_y_to_x();
            next.set(k, at_m2 - at_m1);
        }
        s = next;
    }
    s
}

/// `T^(R,1)_{j,k}(m1, m2)`: `h^k` coefficient of `S_j` divided by the forced
/// window factor `prod_{i=0..j-1}(m2 - m1 - i)`; the division must be exact.
pub fn gen_t_r1(j: usize, k: usize) -> Poly2 {
    if j == 0 {
        return if k == 0 { Poly2::one() } else { Poly2::zero() };
    }
    let s = s_window(j, k);
    let mut h_k = s.coeff(k).clone();
    for i in 0..j {
        h_k = divide_by_window_factor(&h_k, i as i64);
    }
    assert!(
        h_k.total_degree() <= (j + k) as u32,
        "degree bound violated for T^(R,1)_{{{j},{k}}}"
    );
    h_k
}

/// Exact division of `p(m1, m2)` by `(m2 - m1 - i)`, via the change of
/// coordinates `v = m2 - m1` and synthetic division at `v = i`.  A nonzero
/// remainder is an internal-consistency failure.
fn divide_by_window_factor(p: &Poly2, i: i64) -> Poly2 {
    if p.is_zero() {
        return Poly2::zero();
    }
    // rewrite in (u, v) with u = m1, m2 = u + v
    let mut in_v: Vec<PolyU> = Vec::new();
    for (&(a, b), c) in p.iter() {
        // m1^a m2^b = u^a (u+v)^b
        for s in 0..=b {
            let w = binom(b as i64, s as u64) * c;
            // term u^(a + b - s) v^s
            let vs = s as usize;
            if in_v.len() <= vs {
                in_v.resize(vs + 1, PolyU::default());
            }
            let mut mono = vec![Rat::zero(); (a + b - s) as usize + 1];
            *mono.last_mut().unwrap() = w;
            in_v[vs] = std::mem::take(&mut in_v[vs]) + PolyU::from_coeffs(mono);
        }
    }
    // synthetic division by (v - i): p(v) = (v - i) q(v) + p(i)
    let mut quot: Vec<PolyU> = vec![PolyU::default(); in_v.len().saturating_sub(1)];
    let mut carry = PolyU::default();
    for d in (1..in_v.len()).rev() {
        carry = std::mem::take(&mut in_v[d]) + carry.scale(&ri(i));
        quot[d - 1] = carry.clone();
    }
    let rem = std::mem::take(&mut in_v[0]) + carry.scale(&ri(i));
    assert!(
        rem.is_zero(),
        "internal consistency: window factor (m2 - m1 - {i}) does not divide"
    );
    // map back: u^a v^s -> m1^a (m2 - m1)^s
    let diff = Poly2::term(0, 1, Rat::one()) - Poly2::term(1, 0, Rat::one());
    let mut diff_pows = vec![Poly2::one()];
    for s in 1..quot.len().max(1) {
        let next = diff_pows[s - 1].clone() * diff.clone();
        diff_pows.push(next);
    }
    let mut out = Poly2::default();
    for (s, pu) in quot.iter().enumerate() {
        for (a, c) in pu.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out + diff_pows[s].scale(c) * Poly2::term(a as u32, 0, Rat::one());
        }
    }
    out
}
