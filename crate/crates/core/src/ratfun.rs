//! Exact rational functions in one variable `s`.
//!
//! A [`RatFun`] holds an integer numerator and denominator. Arithmetic does
//! not reduce eagerly; [`RatFun::reduced`] produces the canonical form
//! (coprime, positive leading denominator coefficient, overall content 1)
//! and every public operation that returns a value to callers outside the
//! hot loops returns it reduced. Equality is decided by cross-multiplication,
//! so reduced and unreduced representatives compare equal.

use std::collections::BTreeSet;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Denominator degree past which sums are reduced on the fly.
const REDUCE_DEGREE: usize = 10;

#[derive(Clone)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun { num, den })
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn constant(c: &BigRational) -> Self {
        RatFun {
            num: Poly::constant(c.numer().clone()),
            den: Poly::constant(c.denom().clone()),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// The identity function `s`.
    pub fn s() -> Self {
        RatFun::from_poly(Poly::linear(0, 1))
    }

    /// `1 / (n·s + nu)`; `(n, nu)` must not both be zero.
    pub fn recip_linear(n: impl Into<BigInt>, nu: impl Into<BigInt>) -> Self {
        let den = Poly::linear(nu, n);
        assert!(!den.is_zero(), "1/(0·s + 0)");
        RatFun {
            num: Poly::one(),
            den,
        }
    }

    /// Numerator of the current (possibly unreduced) representative.
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Canonical representative.
    pub fn reduced(&self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        let g = Poly::gcd(&self.num, &self.den);
        let (mut num, mut den) = if g.is_constant() {
            (self.num.clone(), self.den.clone())
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides numerator"),
                self.den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RatFun { num, den }
    }

    pub fn is_canonical(&self) -> bool {
        let r = self.reduced();
        r.num == self.num && r.den == self.den
    }

    pub fn scale(&self, c: &BigRational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c.numer()),
            den: self.den.scale(c.denom()),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.recip()?)
    }

    /// `f(a·s + b)`, canonical.
    pub fn substitute_affine(&self, a: &BigRational, b: &BigRational) -> Result<RatFun> {
        if a.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        let f = self.reduced();
        let (a1, a2) = (a.numer(), a.denom());
        let (b1, b2) = (b.numer(), b.denom());
        let l = Poly::linear(b1 * a2, a1 * b2);
        let d = a2 * b2;
        let (dn, dd) = (f.num.degree(), f.den.degree());
        let mut num = f.num.compose_scaled(&l, &d, dn);
        let mut den = f.den.compose_scaled(&l, &d, dd);
        if dd > dn {
            num = num.scale(&num_traits::pow(d.clone(), dd - dn));
        } else if dn > dd {
            den = den.scale(&num_traits::pow(d.clone(), dn - dd));
        }
        Ok(RatFun { num, den }.reduced())
    }

    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        let dv = self.den.eval(x);
        if !dv.is_zero() {
            return Ok(self.num.eval(x) / dv);
        }
        let r = self.reduced();
        let dv = r.den.eval(x);
        if dv.is_zero() {
            return Err(Error::EvaluationAtPole(x.to_string()));
        }
        Ok(r.num.eval(x) / dv)
    }

    /// Poles sorted ascending, each with its order.
    pub fn poles_with_multiplicity(&self) -> Result<Vec<(BigRational, usize)>> {
        let r = self.reduced();
        let (roots, rest) = linear_factors(&r.den);
        if !rest.is_constant() {
            return Err(Error::NonLinearFactor(rest.render("s")));
        }
        Ok(roots)
    }

    /// Absolute values of the poles.
    pub fn pol_plus(&self) -> Result<BTreeSet<BigRational>> {
        Ok(self
            .poles_with_multiplicity()?
            .into_iter()
            .map(|(x, _)| x.abs())
            .collect())
    }

    /// Residue at `x`: zero off the poles, an error at poles of order ≥ 2.
    pub fn residue_at(&self, x: &BigRational) -> Result<BigRational> {
        let r = self.reduced();
        let lin = Poly::linear(-x.numer(), x.denom().clone());
        let mut h = r.den.clone();
        let mut order = 0;
        while let Some(q) = h.div_exact(&lin) {
            h = q;
            order += 1;
        }
        match order {
            0 => Ok(BigRational::zero()),
            1 => {
                let q = BigRational::from_integer(x.denom().clone());
                Ok(r.num.eval(x) / (q * h.eval(x)))
            }
            _ => Err(Error::HigherOrderPole {
                at: x.to_string(),
                order,
            }),
        }
    }

    /// Canonical denominator split as `c · ∏ (a_i s + b_i)^(e_i) · rest`
    /// with `a_i > 0` primitive, factors ordered by decreasing root.
    fn den_factors(&self) -> (BigInt, Vec<(Poly, usize)>, Poly) {
        let (roots, rest) = linear_factors(&self.den);
        let mut factors: Vec<(Poly, usize)> = roots
            .iter()
            .rev()
            .map(|(x, e)| (Poly::linear(-x.numer(), x.denom().clone()), *e))
            .collect();
        let mut prod = rest.clone();
        for (f, e) in &factors {
            prod = &prod * &f.pow(*e);
        }
        let c = &self.den.lead() / &prod.lead();
        let rest = if rest.is_constant() {
            Poly::one()
        } else {
            rest
        };
        factors.retain(|(_, e)| *e > 0);
        (c, factors, rest)
    }

    /// Plain-text canonical rendering, e.g. `(3*s + 7)/((15*s + 7)*(s + 1))`.
    pub fn render_text(&self) -> String {
        let r = self.reduced();
        if r.num.is_zero() {
            return "0".into();
        }
        let num = if r.num.term_count() > 1 {
            format!("({})", r.num.render("s"))
        } else {
            r.num.render("s")
        };
        if r.den.is_constant() {
            let c = r.den.lead();
            return if c.is_one() {
                r.num.render("s")
            } else {
                format!("{num}/{c}")
            };
        }
        let (c, factors, rest) = r.den_factors();
        let mut parts = Vec::new();
        if !c.is_one() {
            parts.push(c.to_string());
        }
        for (f, e) in &factors {
            let base = if f.term_count() > 1 {
                format!("({})", f.render("s"))
            } else {
                f.render("s")
            };
            parts.push(if *e > 1 { format!("{base}^{e}") } else { base });
        }
        if !rest.is_constant() {
            parts.push(format!("({})", rest.render("s")));
        }
        if parts.len() == 1 {
            format!("{num}/{}", parts[0])
        } else {
            format!("{num}/({})", parts.join("*"))
        }
    }

    /// LaTeX rendering as `\frac{…}{…}` with the denominator factored.
    pub fn render_latex(&self) -> String {
        let r = self.reduced();
        if r.num.is_zero() {
            return "0".into();
        }
        let num = r.num.render_latex("s");
        if r.den.is_constant() {
            let c = r.den.lead();
            return if c.is_one() {
                num
            } else {
                format!("\\frac{{{num}}}{{{c}}}")
            };
        }
        let (c, factors, rest) = r.den_factors();
        let mut den = String::new();
        if !c.is_one() {
            den.push_str(&c.to_string());
        }
        let lone = c.is_one() && factors.len() == 1 && factors[0].1 == 1 && rest.is_constant();
        for (f, e) in &factors {
            let body = f.render_latex("s");
            if lone || f.term_count() == 1 && *e == 1 {
                den.push_str(&body);
            } else {
                den.push_str(&format!("({body})"));
            }
            if *e > 1 {
                den.push_str(&format!("^{{{e}}}"));
            }
        }
        if !rest.is_constant() {
            den.push_str(&format!("({})", rest.render_latex("s")));
        }
        format!("\\frac{{{num}}}{{{den}}}")
    }

    /// Numerator and denominator coefficient strings of the canonical form.
    pub fn canonical_coeffs(&self) -> (Vec<String>, Vec<String>) {
        let r = self.reduced();
        let f = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect();
        let num = if r.num.is_zero() {
            vec!["0".to_string()]
        } else {
            f(&r.num)
        };
        (num, f(&r.den))
    }

    /// Builds a function from rational coefficient lists (ascending).
    pub fn from_rational_coeffs(num: &[BigRational], den: &[BigRational]) -> Result<RatFun> {
        let (n, ln) = integerize(num);
        let (d, ld) = integerize(den);
        RatFun::new(n.scale(&ld), d.scale(&ln)).map(|f| f.reduced())
    }

    fn combine(&self, rhs: &RatFun, sub: bool) -> RatFun {
        let rhs_num = if sub { -&rhs.num } else { rhs.num.clone() };
        if self.num.is_zero() {
            return RatFun {
                num: rhs_num,
                den: rhs.den.clone(),
            };
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        let out = if self.den == rhs.den {
            RatFun {
                num: &self.num + &rhs_num,
                den: self.den.clone(),
            }
        } else if self.den.is_constant() && rhs.den.is_constant() {
            RatFun {
                num: &self.num.scale(&rhs.den.lead()) + &rhs_num.scale(&self.den.lead()),
                den: self.den.scale(&rhs.den.lead()),
            }
        } else {
            let g = Poly::gcd(&self.den, &rhs.den);
            let (a, b) = if g.is_constant() {
                (self.den.clone(), rhs.den.clone())
            } else {
                (
                    self.den.div_exact(&g).expect("gcd divides"),
                    rhs.den.div_exact(&g).expect("gcd divides"),
                )
            };
            RatFun {
                num: &(&self.num * &b) + &(&rhs_num * &a),
                den: &self.den * &b,
            }
        };
        if out.num.is_zero() {
            RatFun::zero()
        } else if out.den.degree() > REDUCE_DEGREE {
            out.reduced()
        } else {
            out
        }
    }
}

/// Scales rational coefficients to a common integer polynomial `p` with
/// the original equal to `p / l`.
fn integerize(coeffs: &[BigRational]) -> (Poly, BigInt) {
    let l = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let p = Poly::new(
        coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect(),
    );
    (p, l)
}

/// Rational roots (ascending, with multiplicity) and the remaining factor
/// of a nonzero polynomial.
fn linear_factors(p: &Poly) -> (Vec<(BigRational, usize)>, Poly) {
    let mut rest = p.primitive();
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    let mut zero_mult = 0;
    while !rest.is_zero() && rest.coeff(0).is_zero() {
        rest = Poly::new(rest.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    'search: while rest.degree() >= 1 {
        let c0 = rest.coeff(0).abs();
        let lc = rest.lead().abs();
        let ps = divisors(&c0);
        let qs = divisors(&lc);
        let d = rest.degree();
        for sign in [-1i32, 1] {
            for pn in &ps {
                for qd in &qs {
                    if !pn.gcd(qd).is_one() {
                        continue;
                    }
                    let pv = pn * BigInt::from(sign);
                    // q^d · rest(p/q) as an integer.
                    let mut acc = BigInt::zero();
                    let mut qpow = BigInt::one();
                    let mut terms = Vec::with_capacity(d + 1);
                    for _ in 0..=d {
                        terms.push(qpow.clone());
                        qpow *= qd;
                    }
                    let mut ppow = BigInt::one();
                    for (i, c) in rest.coeffs().iter().enumerate() {
                        acc += c * &ppow * &terms[d - i];
                        ppow *= &pv;
                    }
                    if acc.is_zero() {
                        let lin = Poly::linear(-&pv, qd.clone());
                        let mut e = 0;
                        while let Some(q) = rest.div_exact(&lin) {
                            rest = q;
                            e += 1;
                        }
                        roots.push((BigRational::new(pv, qd.clone()), e));
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest)
}

impl PartialEq for RatFun {
    fn eq(&self, other: &RatFun) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.render_text())
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, false)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, true)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a RatFun> for RatFun {
    fn sum<I: Iterator<Item = &'a RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + x)
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            num: Vec<String>,
            den: Vec<String>,
        }
        let (num, den) = self.canonical_coeffs();
        Repr { num, den }.serialize(ser)
    }
}

/// A JSON coefficient: `"p/q"`, `"p"` or an integer literal.
pub(crate) fn parse_coeff(v: &serde_json::Value) -> std::result::Result<BigRational, String> {
    match v {
        serde_json::Value::String(s) => s
            .trim()
            .parse::<BigRational>()
            .map_err(|e| format!("bad coefficient {s:?}: {e}")),
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| format!("coefficient {n} is not an integer; quote fractions as \"p/q\"")),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            num: Vec<serde_json::Value>,
            den: Vec<serde_json::Value>,
        }
        let r = Repr::deserialize(de)?;
        let conv = |v: &[serde_json::Value]| -> std::result::Result<Vec<BigRational>, D::Error> {
            v.iter().map(|c| parse_coeff(c).map_err(D::Error::custom)).collect()
        };
        let num = conv(&r.num)?;
        let den = conv(&r.den)?;
        RatFun::from_rational_coeffs(&num, &den).map_err(D::Error::custom)
    }
}
