//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! A [`CycNumber`] is a polynomial in `zeta_N` with rational
//! coefficients, kept reduced modulo the N-th cyclotomic polynomial
//! `Phi_N`. Reduction in the power basis `zeta^0 .. zeta^(phi(N)-1)` is
//! canonical, so equality of values is equality of coefficient vectors
//! once both operands live at a common order (the lcm of their orders).
//!
//! Internally a value is stored as an integer coordinate vector over a
//! single positive denominator, normalized so the denominator is
//! coprime to the coordinate content; since `Phi_N` is monic with
//! integer coefficients, reduction never leaves that shape, and the
//! common case (algebraic integers) runs on plain `BigInt` arithmetic.
//!
//! The module also provides the q-combinatorics evaluated at roots of
//! unity: q-integers, q-factorials, Gaussian q-binomials (by the Pascal
//! recurrence, never by division, since q-factorials vanish at roots of
//! unity) and the balanced q-integer `[m]_r = (r^m - r^-m)/(r - r^-1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub type Rational = BigRational;

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

// ---- Polynomial helpers over Q (ascending coefficients, trailing zeros trimmed) ----

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    poly_trim(out)
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = poly_trim(den.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = poly_trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = Rational::one() / den.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() {
        let c = rem.last().unwrap() * &lead_inv;
        let shift = rem.len() - den.len();
        quot[shift] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let sub = d * &c;
            rem[shift + i] -= sub;
        }
        rem = poly_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (poly_trim(quot), rem)
}

/// Cached data for one cyclotomic order: `Phi_N` and the reduced
/// representation of every power `zeta_N^t`, `0 <= t < N`. All entries
/// are integers because `Phi_N` is monic over the integers.
struct OrderTables {
    phi: usize,
    phi_poly: Vec<BigInt>,
    powers: Vec<Vec<BigInt>>,
}

/// Multiply a reduced integer coordinate vector by zeta: shift up and
/// fold the monic head back with
/// `x^phi = -(Phi_0 + ... + Phi_{phi-1} x^{phi-1})`.
fn shift_reduce(cur: &[BigInt], phi_poly: &[BigInt]) -> Vec<BigInt> {
    let phi = cur.len();
    let carry = cur[phi - 1].clone();
    let mut next = vec![BigInt::zero(); phi];
    for i in (1..phi).rev() {
        next[i] = cur[i - 1].clone();
    }
    if !carry.is_zero() {
        for i in 0..phi {
            next[i] -= &carry * &phi_poly[i];
        }
    }
    next
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<OrderTables>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<OrderTables>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The N-th cyclotomic polynomial, by exact division of `x^N - 1` by the
/// product of `Phi_d` over the proper divisors `d` of `N`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if n == 1 {
        return vec![rat_int(-1), rat_int(1)];
    }
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = rat_int(-1);
    num[n as usize] = rat_int(1);
    let mut den = vec![rat_int(1)];
    for d in divisors(n) {
        if d < n {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    let (quot, rem) = poly_divrem(&num, &den);
    debug_assert!(rem.is_empty(), "x^N - 1 must be divisible by all Phi_d");
    quot
}

fn order_tables(n: u64) -> Arc<OrderTables> {
    if let Some(t) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let phi_poly: Vec<BigInt> = cyclotomic_polynomial(n)
        .into_iter()
        .map(|c| {
            debug_assert!(c.denom().is_one(), "Phi_N has integer coefficients");
            c.numer().clone()
        })
        .collect();
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    powers.push(cur.clone());
    for _ in 1..n {
        let next = shift_reduce(&cur, &phi_poly);
        powers.push(next.clone());
        cur = next;
    }
    let tables = Arc::new(OrderTables {
        phi,
        phi_poly,
        powers,
    });
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&tables));
    tables
}

/// An element of Q(zeta_N), reduced modulo `Phi_N`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Restore the canonical shape: zero has denominator 1, and otherwise
/// the denominator is positive and coprime to the coordinate content.
fn normalize(mut num: Vec<BigInt>, mut den: BigInt) -> (Vec<BigInt>, BigInt) {
    debug_assert!(den.is_positive());
    if den.is_one() {
        return (num, den);
    }
    let mut g = den.clone();
    for n in &num {
        if g.is_one() {
            break;
        }
        if !n.is_zero() {
            g = g.gcd(n);
        }
    }
    if g == den && num.iter().all(Zero::is_zero) {
        return (num, BigInt::one());
    }
    if !g.is_one() {
        den /= &g;
        for n in &mut num {
            *n /= &g;
        }
    }
    (num, den)
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        let (numer, denom) = r.into_raw();
        CycNumber {
            order: 1,
            num: vec![numer],
            den: denom,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        CycNumber {
            order: 1,
            num: vec![BigInt::from(n)],
            den: BigInt::one(),
        }
    }

    /// zeta_N^k, reduced. `k` may be any integer; it is taken mod N.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let t = k.rem_euclid(order as i64) as u64;
        let tables = order_tables(order);
        CycNumber {
            order,
            num: tables.powers[t as usize].clone(),
            den: BigInt::one(),
        }
    }

    /// Sum of `c * zeta_order^t` over the given terms; exponents are
    /// reduced mod the order.
    pub fn from_power_terms<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let tables = order_tables(order);
        let mut num = vec![BigInt::zero(); tables.phi];
        let mut den = BigInt::one();
        for (t, c) in terms {
            if c.is_zero() {
                continue;
            }
            let (c_num, c_den) = c.into_raw();
            if den != c_den {
                let l = den.lcm(&c_den);
                let scale_old = &l / &den;
                if !scale_old.is_one() {
                    for n in &mut num {
                        *n *= &scale_old;
                    }
                }
                let factor = (&l / &c_den) * &c_num;
                den = l;
                accumulate_row(&mut num, &tables.powers[(t % order) as usize], &factor);
            } else {
                accumulate_row(&mut num, &tables.powers[(t % order) as usize], &c_num);
            }
        }
        let (num, den) = normalize(num, den);
        CycNumber { order, num, den }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The reduced coefficient vector, as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Re-express at order `m`, which must be a multiple of the current order.
    pub fn lift_to(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.order),
            "lift target must be a multiple of the current order"
        );
        if m == self.order {
            return self.clone();
        }
        let stretch = m / self.order;
        let tables = order_tables(m);
        let mut num = vec![BigInt::zero(); tables.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (i as u64 * stretch) % m;
            accumulate_row(&mut num, &tables.powers[t as usize], c);
        }
        let (num, den) = normalize(num, self.den.clone());
        CycNumber { order: m, num, den }
    }

    /// Re-express at an arbitrary order. Raising is always possible;
    /// lowering solves an exact linear system and fails with
    /// [`Error::NotInSubfield`] when the value does not lie in
    /// Q(zeta_m).
    pub fn to_order(&self, m: u64) -> Result<Self> {
        assert!(m >= 1);
        if m == self.order {
            return Ok(self.clone());
        }
        if m.is_multiple_of(self.order) {
            return Ok(self.lift_to(m));
        }
        let common = self.order.lcm(&m);
        let lifted = self.lift_to(common);
        if common == m {
            return Ok(lifted);
        }
        // Lower from `common` to `m`: express the value in the basis
        // zeta_m^j, 0 <= j < phi(m), inside Q(zeta_common).
        let tables = order_tables(common);
        let phi_m = euler_phi(m) as usize;
        let stretch = common / m;
        let mut sys = Matrix::<Rational>::zeros(tables.phi, phi_m);
        for j in 0..phi_m {
            let col = &tables.powers[((j as u64 * stretch) % common) as usize];
            for i in 0..tables.phi {
                sys[(i, j)] = Rational::from_integer(col[i].clone());
            }
        }
        let coeffs = sys
            .solve(&lifted.coeffs())
            .ok_or(Error::NotInSubfield(m))?;
        Ok(Self::from_power_terms(
            m,
            coeffs.into_iter().enumerate().map(|(i, c)| (i as u64, c)),
        ))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let common = self.order.lcm(&other.order);
        (self.lift_to(common), other.lift_to(common))
    }

    fn scaled_by(&self, numer: &BigInt, denom: &BigInt) -> Self {
        if numer.is_zero() {
            return CycNumber::zero();
        }
        let num: Vec<BigInt> = self
            .num
            .iter()
            .map(|c| if c.is_zero() { c.clone() } else { c * numer })
            .collect();
        let (num, den) = normalize(num, &self.den * denom);
        CycNumber {
            order: self.order,
            num,
            den,
        }
    }

    /// The index of the single nonzero coordinate, when there is one.
    fn as_monomial_index(&self) -> Option<usize> {
        let mut nonzero = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i);
        let first = nonzero.next()?;
        if nonzero.next().is_none() {
            Some(first)
        } else {
            None
        }
    }

    /// Multiply by `c * zeta^k` through the power table: a rotation of
    /// indices, with only the wrapped-around rows needing a fold.
    fn mul_by_monomial(&self, k: usize, c: &BigInt, extra_den: &BigInt) -> Self {
        let tables = order_tables(self.order);
        let phi = tables.phi;
        let mut num = vec![BigInt::zero(); phi];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let prod = a * c;
            let t = (i + k) % self.order as usize;
            if t < phi {
                num[t] += prod;
            } else {
                accumulate_row(&mut num, &tables.powers[t], &prod);
            }
        }
        let (num, den) = normalize(num, &self.den * extra_den);
        CycNumber {
            order: self.order,
            num,
            den,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Monomials invert by negating the exponent.
        if let Some(k) = self.as_monomial_index() {
            let c = Rational::new(self.den.clone(), self.num[k].clone());
            let neg = (self.order - k as u64 % self.order) % self.order;
            return Ok(Self::from_power_terms(self.order, [(neg, c)]));
        }
        // General case: solve u * v = 1 in the power basis. The columns
        // of the multiplication-by-u matrix are u * zeta^j; the shared
        // denominator moves to the right-hand side.
        let tables = order_tables(self.order);
        let phi = tables.phi;
        let mut mul_matrix = Matrix::<Rational>::zeros(phi, phi);
        let mut col = self.num.clone();
        for j in 0..phi {
            for i in 0..phi {
                mul_matrix[(i, j)] = Rational::from_integer(col[i].clone());
            }
            if j + 1 < phi {
                col = shift_reduce(&col, &tables.phi_poly);
            }
        }
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::from_integer(self.den.clone());
        let coeffs = mul_matrix
            .solve(&rhs)
            .expect("nonzero elements of a field are invertible");
        Ok(Self::from_power_terms(
            self.order,
            coeffs.into_iter().enumerate().map(|(i, c)| (i as u64, c)),
        ))
    }

    /// Integer power; negative exponents invert first.
    ///
    /// Panics when raising zero to a negative power.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 {
            self.inv().expect("cannot raise zero to a negative power")
        } else {
            self.clone()
        };
        let mut exp = k.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Least `d >= 1` with `self^d = 1`. Searches up to `lcm(2, N)`,
    /// which bounds the order of every root of unity in Q(zeta_N).
    pub fn order_of_unity(&self) -> Result<u64> {
        let bound = self.order.lcm(&2);
        let mut power = self.clone();
        for d in 1..=bound {
            if power.is_one() {
                return Ok(d);
            }
            power = &power * self;
        }
        Err(Error::NotRootOfUnity(self.to_string()))
    }
}

fn accumulate_row(acc: &mut [BigInt], row: &[BigInt], factor: &BigInt) {
    for (a, r) in acc.iter_mut().zip(row) {
        if !r.is_zero() {
            if r.is_one() {
                *a += factor;
            } else {
                *a += factor * r;
            }
        }
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = self.aligned(other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNumber {}

impl std::ops::Add for &CycNumber {
    type Output = CycNumber;

    fn add(self, rhs: &CycNumber) -> CycNumber {
        if self.order != rhs.order {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        if self.den == rhs.den {
            let num: Vec<BigInt> = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(x, y)| x + y)
                .collect();
            let (num, den) = normalize(num, self.den.clone());
            return CycNumber {
                order: self.order,
                num,
                den,
            };
        }
        let l = self.den.lcm(&rhs.den);
        let s1 = &l / &self.den;
        let s2 = &l / &rhs.den;
        let num: Vec<BigInt> = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(x, y)| x * &s1 + y * &s2)
            .collect();
        let (num, den) = normalize(num, l);
        CycNumber {
            order: self.order,
            num,
            den,
        }
    }
}

impl std::ops::Sub for &CycNumber {
    type Output = CycNumber;

    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &CycNumber {
    type Output = CycNumber;

    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl std::ops::Mul for &CycNumber {
    type Output = CycNumber;

    fn mul(self, rhs: &CycNumber) -> CycNumber {
        if self.is_zero() || rhs.is_zero() {
            return CycNumber::zero();
        }
        // Rational factors only rescale the coordinate vector.
        if self.num[1..].iter().all(Zero::is_zero) {
            return rhs.scaled_by(&self.num[0], &self.den);
        }
        if rhs.num[1..].iter().all(Zero::is_zero) {
            return self.scaled_by(&rhs.num[0], &rhs.den);
        }
        if self.order != rhs.order {
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        // Products with a single power of zeta rotate the table indices.
        if let Some(k) = self.as_monomial_index() {
            return rhs.mul_by_monomial(k, &self.num[k], &self.den);
        }
        if let Some(k) = rhs.as_monomial_index() {
            return self.mul_by_monomial(k, &rhs.num[k], &rhs.den);
        }
        let order = self.order;
        let tables = order_tables(order);
        let phi = tables.phi;
        // Schoolbook product, then fold the overflow degrees back with
        // the power table (zeta^t = powers[t mod N]).
        let mut raw = vec![BigInt::zero(); 2 * phi];
        for (i, ai) in self.num.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in rhs.num.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                raw[i + j] += ai * bj;
            }
        }
        let mut num: Vec<BigInt> = raw[..phi].to_vec();
        for (t, c) in raw.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            accumulate_row(&mut num, &tables.powers[t % order as usize], c);
        }
        let (num, den) = normalize(num, &self.den * &rhs.den);
        CycNumber { order, num, den }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl std::ops::$trait for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add, add; Sub, sub; Mul, mul);

impl std::ops::Neg for CycNumber {
    type Output = CycNumber;

    fn neg(self) -> CycNumber {
        -&self
    }
}

impl std::ops::Div for CycNumber {
    type Output = CycNumber;

    #[allow(clippy::suspicious_arithmetic_impl)] // division = multiply by inverse
    fn div(self, rhs: CycNumber) -> CycNumber {
        &self * &rhs.inv().expect("division by zero")
    }
}

impl Zero for CycNumber {
    fn zero() -> Self {
        CycNumber::zero()
    }

    fn is_zero(&self) -> bool {
        CycNumber::is_zero(self)
    }
}

impl One for CycNumber {
    fn one() -> Self {
        CycNumber::one()
    }

    fn is_one(&self) -> bool {
        CycNumber::is_one(self)
    }
}

// ---- q-combinatorics at a fixed parameter ----

/// The q-integer `(m)_q = 1 + q + ... + q^(m-1)`, with `(0)_q = 0`.
pub fn q_integer(m: u64, q: &CycNumber) -> CycNumber {
    let mut sum = CycNumber::zero();
    let mut power = CycNumber::one();
    for _ in 0..m {
        sum = &sum + &power;
        power = &power * q;
    }
    sum
}

/// The q-factorial `(m)_q! = (1)_q (2)_q ... (m)_q`.
pub fn q_factorial(m: u64, q: &CycNumber) -> CycNumber {
    let mut prod = CycNumber::one();
    for t in 1..=m {
        prod = &prod * &q_integer(t, q);
    }
    prod
}

/// Gaussian q-binomial coefficient, computed by the Pascal recurrence
/// `C(n,m)_q = C(n-1,m-1)_q + q^m C(n-1,m)_q`. Division-free, so it is
/// well defined when q is a root of unity and the q-factorials vanish.
pub fn q_binomial(n: u64, m: u64, q: &CycNumber) -> Result<CycNumber> {
    if m > n {
        return Err(Error::IndexOutOfRange(format!(
            "q-binomial needs m <= n, got n={n}, m={m}"
        )));
    }
    // row[j] holds C(i, j)_q while i climbs from 0 to n.
    let mut row = vec![CycNumber::one()];
    let mut q_pows = Vec::with_capacity(m as usize + 1);
    let mut p = CycNumber::one();
    for _ in 0..=m {
        q_pows.push(p.clone());
        p = &p * q;
    }
    for i in 1..=n {
        let width = m.min(i) as usize;
        let mut next = Vec::with_capacity(width + 1);
        next.push(CycNumber::one());
        for j in 1..=width {
            let up_left = &row[j - 1];
            let up = if j < row.len() {
                &q_pows[j] * &row[j]
            } else {
                CycNumber::zero()
            };
            next.push(up_left + &up);
        }
        row = next;
    }
    Ok(row[m as usize].clone())
}

/// The balanced q-integer `[m]_r = (r^m - r^-m) / (r - r^-1)`.
pub fn balanced_q_integer(m: u64, r: &CycNumber) -> Result<CycNumber> {
    let r_inv = r.inv().map_err(|_| {
        Error::DegenerateParameter("balanced q-integer needs r != 0".into())
    })?;
    let denom = r - &r_inv;
    if denom.is_zero() {
        return Err(Error::DegenerateParameter(
            "balanced q-integer needs r^2 != 1".into(),
        ));
    }
    let num = &r.pow(m as i64) - &r_inv.pow(m as i64);
    Ok(&num * &denom.inv().expect("nonzero denominator"))
}

// ---- Canonical text form ----

fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNumber {
    /// Canonical rendering `c0 + c1*z + c2*z^2 + ...` with `z = zeta_N`,
    /// zero coefficients omitted, and rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let terms: Vec<(usize, &Rational)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (k, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let z_part = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            match z_part {
                None => write!(f, "{}", rational_string(&mag))?,
                Some(z) => {
                    if mag.is_one() {
                        write!(f, "{z}")?;
                    } else {
                        write!(f, "{}*{}", rational_string(&mag), z)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl CycNumber {
    /// Parse the canonical text form back into a value at the given order.
    pub fn parse(input: &str, order: u64) -> Result<Self> {
        let mut terms: Vec<(u64, Rational)> = Vec::new();
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty cyclotomic literal".into()));
        }
        let mut rest = s.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        loop {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = &rest[..end];
            let (coeff, power) = parse_term(term, order)?;
            terms.push((power, coeff * rat_int(sign)));
            if end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[end] == b'-' { -1 } else { 1 };
            rest = &rest[end + 1..];
            if rest.is_empty() {
                return Err(Error::Parse("trailing operator".into()));
            }
        }
        Ok(Self::from_power_terms(order, terms))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.parse().map_err(|_| bad())?;
            let d: BigInt = den.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

fn parse_term(term: &str, order: u64) -> Result<(Rational, u64)> {
    let bad = || Error::Parse(format!("bad term: {term:?}"));
    if let Some(z) = term.find('z') {
        let coeff_part = &term[..z];
        let coeff = if coeff_part.is_empty() {
            Rational::one()
        } else {
            let stripped = coeff_part.strip_suffix('*').ok_or_else(bad)?;
            parse_rational(stripped)?
        };
        let pow_part = &term[z + 1..];
        let power = if pow_part.is_empty() {
            1
        } else {
            let digits = pow_part.strip_prefix('^').ok_or_else(bad)?;
            let p: u64 = digits.parse().map_err(|_| bad())?;
            p
        };
        Ok((coeff, power % order))
    } else {
        Ok((parse_rational(term)?, 0))
    }
}
