//! Exact arithmetic for rational inputs.
//!
//! Entries are Gaussian rationals `a + bi` with `a, b ∈ ℚ`. Transforms of
//! order `m` run in the cyclotomic field `ℚ(ζ_N)`, `N = lcm(m, 4)`, so both
//! `ω = ζ^{N/m}` and `i = ζ^{N/4}` are exact; results are read back as
//! Gaussian rationals and rejected with [`Error::NotExact`] when they leave
//! `ℚ(i)`. Spectra are computed from the exact characteristic polynomial,
//! split into square-free factors first so repeated eigenvalues come out as
//! exact repeats of simple roots.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::block::{CirculantBlockMatrix, SFamily};
use crate::poly::{self, MAX_DEGREE};
use crate::{CMatrix, Error, Result, Scalar};

pub type Rational = BigRational;

/// Parses `p`, `p/q`, or a decimal such as `-1.25e-3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::invalid(alloc::format!("not a rational number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = alloc::format!("{int}{frac}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
    value = if shift >= 0 { value * pow } else { value / pow };
    Ok(if neg { -value } else { value })
}

/// Exact value of a float, read through its shortest decimal representation
/// (so `0.1` becomes `1/10`).
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::NotExact(alloc::format!("{x} is not finite")));
    }
    parse_rational(&alloc::format!("{x:e}"))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
    }

    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?))
    }

    pub fn from_scalar(z: Scalar) -> Result<Self> {
        Ok(GaussianRational::new(rational_from_f64(z.re)?, rational_from_f64(z.im)?))
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn zero() -> Self {
        GaussianRational::real(Rational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        let d = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &d, -&self.im / &d))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}i", format_rational(&self.re), sign, format_rational(&self.im.abs()))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

/// Panics on a zero divisor; use [`GaussianRational::inv`] to check first.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("nonzero divisor")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

/// Exact matrix of Gaussian rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(ExactMatrix { rows: r, cols: c, data })
    }

    pub fn from_cmatrix(m: &CMatrix) -> Result<Self> {
        let data = m
            .as_slice()
            .iter()
            .map(|&z| GaussianRational::from_scalar(z))
            .collect::<Result<_>>()?;
        Ok(ExactMatrix { rows: m.rows(), cols: m.cols(), data })
    }

    pub fn zeros(n: usize) -> Self {
        ExactMatrix { rows: n, cols: n, data: alloc::vec![GaussianRational::zero(); n * n] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        self.data.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_scalar())
    }

    fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        let n = self.rows;
        let mut data = Vec::with_capacity(n * o.cols);
        for i in 0..n {
            for j in 0..o.cols {
                let mut acc = GaussianRational::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                data.push(acc);
            }
        }
        ExactMatrix { rows: n, cols: o.cols, data }
    }
}

/// `ℚ(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclotomicField {
    order: usize,
    /// Monic `Φ_N`, lowest degree first.
    modulus: Vec<Rational>,
}

/// Element of a [`CyclotomicField`], coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo {
    coeffs: Vec<Rational>,
}

fn poly_divrem_q(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let lead = den[dd].clone();
    let mut q = alloc::vec![Rational::zero(); r.len() - dd];
    for i in (dd..r.len()).rev() {
        let c = &r[i] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let idx = i - dd + j;
            r[idx] = &r[idx] - &c * d;
        }
        q[i - dd] = c;
    }
    r.truncate(dd);
    (q, r)
}

/// `Φ_N`, lowest degree first.
fn cyclotomic_polynomial(n: usize) -> Vec<Rational> {
    let mut p = alloc::vec![Rational::zero(); n + 1];
    p[0] = -Rational::one();
    p[n] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divrem_q(&p, &cyclotomic_polynomial(d)).0;
        }
    }
    p
}

impl CyclotomicField {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("field order must be positive"));
        }
        Ok(CyclotomicField { order, modulus: cyclotomic_polynomial(order) })
    }

    /// Smallest field containing order-`m` roots of unity and `i`.
    pub fn for_transform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("transform order must be positive"));
        }
        CyclotomicField::new(m.lcm(&4))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Cyclo {
        let d = self.degree();
        if c.len() > d {
            c = poly_divrem_q(&c, &self.modulus).1;
        }
        c.resize(d, Rational::zero());
        Cyclo { coeffs: c }
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo { coeffs: alloc::vec![Rational::zero(); self.degree()] }
    }

    pub fn rational(&self, x: Rational) -> Cyclo {
        let mut z = self.zero();
        z.coeffs[0] = x;
        z
    }

    /// `ζ^k`
    pub fn zeta_pow(&self, k: i64) -> Cyclo {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut c = alloc::vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        self.reduce(c)
    }

    /// `ω^k` for the order-`m` root `ω = ζ^{N/m}`; `m` must divide `N`.
    pub fn root_pow(&self, k: i64, m: usize) -> Cyclo {
        debug_assert_eq!(self.order % m, 0);
        self.zeta_pow(k * (self.order / m) as i64)
    }

    pub fn i(&self) -> Cyclo {
        self.zeta_pow((self.order / 4) as i64)
    }

    pub fn gaussian(&self, z: &GaussianRational) -> Cyclo {
        let re = self.rational(z.re.clone());
        self.add(&re, &self.scale(&self.i(), &z.im))
    }

    pub fn add(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        Cyclo { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, a: &Cyclo, s: &Rational) -> Cyclo {
        Cyclo { coeffs: a.coeffs.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, a: &Cyclo, b: &Cyclo) -> Cyclo {
        let mut c = alloc::vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + x * y;
            }
        }
        self.reduce(c)
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self, a: &Cyclo) -> Cyclo {
        let mut c = alloc::vec![Rational::zero(); self.order + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            let e = (self.order - i) % self.order;
            c[e] = &c[e] + x;
        }
        self.reduce(c)
    }

    pub fn is_zero(&self, a: &Cyclo) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self, a: &Cyclo) -> Option<Rational> {
        a.coeffs[1..].iter().all(Zero::is_zero).then(|| a.coeffs[0].clone())
    }

    /// `a = x + yi` with rational `x, y`, if it lies in `ℚ(i)`.
    pub fn to_gaussian(&self, a: &Cyclo) -> Option<GaussianRational> {
        let half = Rational::new(1.into(), 2.into());
        let c = self.conj(a);
        let re = self.scale(&self.add(a, &c), &half);
        // (a - conj a) / 2i = -(i/2)(a - conj a)
        let im = self.scale(&self.mul(&self.i(), &self.sub(a, &c)), &(-half));
        Some(GaussianRational::new(self.to_rational(&re)?, self.to_rational(&im)?))
    }

    pub fn to_scalar(&self, a: &Cyclo) -> Scalar {
        a.coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| crate::dft::root_pow(k as i64, self.order) * rational_to_f64(x))
            .sum()
    }
}

fn to_gaussian_or_err(field: &CyclotomicField, a: &Cyclo, what: &str) -> Result<GaussianRational> {
    field
        .to_gaussian(a)
        .ok_or_else(|| Error::NotExact(alloc::format!("{what} is not a Gaussian rational")))
}

/// `out_k = scale · Σ_ℓ x_ℓ ω^{sign·kℓ}` in `ℚ(ζ_N)`.
fn exact_transform(field: &CyclotomicField, x: &[Cyclo], sign: i64, scale: &Rational) -> Vec<Cyclo> {
    let m = x.len();
    (0..m)
        .map(|k| {
            let mut acc = field.zero();
            for (l, v) in x.iter().enumerate() {
                let w = field.root_pow(sign * (k * l) as i64, m);
                acc = field.add(&acc, &field.mul(v, &w));
            }
            field.scale(&acc, scale)
        })
        .collect()
}

/// Exact eigenvalues `λ_k = Σ a_ℓ ω^{kℓ}` of `circ(a)` as cyclotomic elements.
pub fn exact_dft(field: &CyclotomicField, row: &[GaussianRational]) -> Vec<Cyclo> {
    let x: Vec<Cyclo> = row.iter().map(|z| field.gaussian(z)).collect();
    exact_transform(field, &x, 1, &Rational::one())
}

/// Exact first row `a_k = (1/m) Σ λ_ℓ ω^{-kℓ}`; fails when it leaves `ℚ(i)`.
pub fn exact_idft(spectrum: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
    let m = spectrum.len();
    let field = CyclotomicField::for_transform(m)?;
    let x: Vec<Cyclo> = spectrum.iter().map(|z| field.gaussian(z)).collect();
    let scale = Rational::new(1.into(), BigInt::from(m));
    exact_transform(&field, &x, -1, &scale)
        .iter()
        .map(|a| to_gaussian_or_err(&field, a, "first-row entry"))
        .collect()
}

/// Block matrix with Gaussian-rational first rows, grid row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactBlockMatrix {
    pub n: usize,
    pub m: usize,
    pub blocks: Vec<Vec<GaussianRational>>,
}

impl ExactBlockMatrix {
    pub fn block(&self, i: usize, j: usize) -> &[GaussianRational] {
        &self.blocks[i * self.n + j]
    }

    pub fn to_float(&self) -> CirculantBlockMatrix {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(GaussianRational::to_scalar).collect())
            .collect();
        CirculantBlockMatrix::new(self.n, self.m, blocks).expect("validated shape")
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let (n, m) = (self.n, self.m);
        let d = n * m;
        let data = (0..d * d)
            .map(|idx| {
                let (r, c) = (idx / d, idx % d);
                self.block(r / m, c / m)[(c % m + m - r % m) % m].clone()
            })
            .collect();
        ExactMatrix { rows: d, cols: d, data }
    }
}

/// Exact counterpart of [`crate::block::assemble`]: block `(u, v)` has first
/// row `a_k = L_k[u][v]` with `L_k = (1/m) Σ_ℓ S_ℓ ω^{-kℓ}`.
pub fn exact_assemble(family: &[ExactMatrix]) -> Result<ExactBlockMatrix> {
    let m = family.len();
    let Some(first) = family.first() else {
        return Err(Error::invalid("family must contain at least one matrix"));
    };
    let n = first.rows;
    for s in family {
        if s.rows != n || s.cols != n {
            return Err(Error::DimensionMismatch { expected: n, found: s.rows.max(s.cols) });
        }
    }
    let field = CyclotomicField::for_transform(m)?;
    let scale = Rational::new(1.into(), BigInt::from(m));
    let mut blocks = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let x: Vec<Cyclo> = family.iter().map(|s| field.gaussian(s.get(u, v))).collect();
            let row = exact_transform(&field, &x, -1, &scale)
                .iter()
                .map(|a| to_gaussian_or_err(&field, a, "assembled block entry"))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(row);
        }
    }
    Ok(ExactBlockMatrix { n, m, blocks })
}

/// Float family converted entrywise through [`GaussianRational::from_scalar`].
pub fn exact_family(s: &SFamily) -> Result<Vec<ExactMatrix>> {
    s.matrices().iter().map(ExactMatrix::from_cmatrix).collect()
}

/// Monic `det(xI - M)` by Faddeev–LeVerrier over `ℚ(i)`, highest degree first.
pub fn exact_char_poly(mat: &ExactMatrix) -> Result<Vec<GaussianRational>> {
    let n = mat.rows;
    if mat.cols != n {
        return Err(Error::invalid("matrix must be square"));
    }
    let mut coeffs = alloc::vec![GaussianRational::one()];
    let mut mk = ExactMatrix::zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
        let mut next = mat.mul(&mk);
        let prev = coeffs[k - 1].clone();
        for i in 0..n {
            let idx = i * n + i;
            next.data[idx] = &next.data[idx] + &prev;
        }
        let am = mat.mul(&next);
        let mut tr = GaussianRational::zero();
        for i in 0..n {
            tr = &tr + am.get(i, i);
        }
        let k_inv = GaussianRational::real(Rational::new((-1).into(), BigInt::from(k)));
        coeffs.push(&tr * &k_inv);
        mk = next;
    }
    Ok(coeffs)
}

type Poly = Vec<GaussianRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

fn monic(p: Poly) -> Poly {
    let p = trim(p);
    if p[0].is_zero() {
        return p;
    }
    let inv = p[0].inv().expect("nonzero lead");
    p.iter().map(|c| c * &inv).collect()
}

/// Quotient and remainder, highest degree first.
fn divrem(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let den = trim(den.clone());
    let mut r = trim(num.clone());
    if r.len() < den.len() {
        return (alloc::vec![GaussianRational::zero()], r);
    }
    let inv = den[0].inv().expect("nonzero divisor");
    let qlen = r.len() - den.len() + 1;
    let mut q = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let c = &r[i] * &inv;
        for (j, d) in den.iter().enumerate() {
            r[i + j] = &r[i + j] - &(&c * d);
        }
        q.push(c);
    }
    let rem = r[qlen..].to_vec();
    (q, trim(if rem.is_empty() { alloc::vec![GaussianRational::zero()] } else { rem }))
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(GaussianRational::is_zero)
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !is_zero_poly(&b) {
        let r = divrem(&a, &b).1;
        a = b;
        b = r;
    }
    monic(a)
}

fn derivative(p: &Poly) -> Poly {
    let d = p.len() - 1;
    if d == 0 {
        return alloc::vec![GaussianRational::zero()];
    }
    p[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| c * &GaussianRational::real(Rational::from_integer(BigInt::from(d - i))))
        .collect()
}

/// Yun's square-free decomposition `p = Π f_k^k` of a monic polynomial,
/// returned as `(f_k, k)` for the nonconstant factors.
pub fn square_free_decomposition(p: &[GaussianRational]) -> Vec<(Vec<GaussianRational>, usize)> {
    let p = monic(p.to_vec());
    let mut out = Vec::new();
    if p.len() <= 1 {
        return out;
    }
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divrem(&p, &a0).0;
    let mut c = divrem(&dp, &a0).0;
    let mut d = {
        let db = derivative(&b);
        trim(c.iter().zip(pad(&db, c.len())).map(|(x, y)| x - &y).collect())
    };
    let mut k = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), k));
        }
        b = divrem(&b, &a).0;
        c = divrem(&d, &a).0;
        let db = derivative(&b);
        let len = c.len().max(db.len());
        d = trim(pad(&c, len).iter().zip(pad(&db, len)).map(|(x, y)| x - &y).collect());
        k += 1;
    }
    out
}

/// Left-pads with zeros to `len` coefficients (highest degree first).
fn pad(p: &Poly, len: usize) -> Poly {
    let mut out = alloc::vec![GaussianRational::zero(); len.saturating_sub(p.len())];
    out.extend(p.iter().cloned());
    out
}

/// Eigenvalues of an exact matrix: exact characteristic polynomial, exact
/// square-free split, then floating-point roots of each simple factor
/// repeated by multiplicity.
pub fn exact_spectrum(mat: &ExactMatrix) -> Result<Vec<Scalar>> {
    if mat.rows > MAX_DEGREE {
        return Err(Error::UnsupportedSize { what: "exact spectrum order", size: mat.rows, max: MAX_DEGREE });
    }
    let cp = exact_char_poly(mat)?;
    let mut out = Vec::with_capacity(mat.rows);
    for (factor, mult) in square_free_decomposition(&cp) {
        let coeffs: Vec<Scalar> = factor.iter().map(GaussianRational::to_scalar).collect();
        let roots = poly::poly_roots(&coeffs)?;
        for _ in 0..mult {
            out.extend(roots.iter().copied());
        }
    }
    Ok(out)
}
