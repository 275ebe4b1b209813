//! k-Lê-Yomdin singularities `F = f_m + f_{m+k} + …` whose projectivized
//! tangent cone `C ⊂ ℙⁿ` has isolated singular points. Everything is
//! assembled from global Euler characteristics and the local data of `C`
//! at its singular points.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, frak_m, frak_n, jordan_totient};
use crate::cyclo::{CycloProduct, OrderSet};
use crate::error::{Error, Result};
use crate::json;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::resolution::CurveResolutionGraph;
use crate::suspension::{frak_a, GermSummary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LysSurface {
    /// Dimension of the projective space containing `C`.
    pub n: BigInt,
    /// Degree of `C`.
    pub m: BigInt,
    pub k: BigInt,
    /// `χ(ℙⁿ \ C)`.
    pub chi_complement: BigInt,
    /// `χ(C \ Sing C)`.
    pub chi_curve_smooth: BigInt,
    pub points: Vec<GermSummary>,
}

impl LysSurface {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("n", &self.n), ("m", &self.m), ("k", &self.k)] {
            if !v.is_positive() {
                return Err(Error::validation(name, "must be a positive integer"));
            }
        }
        if self.n == BigInt::from(2) {
            let total = &self.chi_complement + &self.chi_curve_smooth + BigInt::from(self.points.len());
            if total != BigInt::from(3) {
                return Err(Error::validation(
                    "chi_complement",
                    format!(
                        "chi(P^2 \\ C) + chi(C \\ Sing C) + #Sing C = {total}, expected chi(P^2) = 3"
                    ),
                ));
            }
        }
        for p in &self.points {
            if !p.zeta.prod_nu0().is_one() {
                return Err(Error::validation(
                    "points",
                    format!("{}: local zeta functions must use the standard form (prod_nu0 = 1)", p.name),
                ));
            }
        }
        Ok(())
    }

    fn require_surface(&self, what: &str) -> Result<()> {
        if self.n != BigInt::from(2) {
            return Err(Error::Input(format!("{what} is only defined for surfaces (n = 2)")));
        }
        Ok(())
    }

    pub fn from_json(v: &serde_json::Value, checked: bool) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            #[serde(with = "json::big", default = "two")]
            n: BigInt,
            #[serde(with = "json::big")]
            m: BigInt,
            #[serde(with = "json::big")]
            k: BigInt,
            #[serde(with = "json::big")]
            chi_complement: BigInt,
            #[serde(with = "json::big")]
            chi_curve_smooth: BigInt,
            #[serde(default)]
            points: Vec<serde_json::Value>,
        }
        fn two() -> BigInt {
            BigInt::from(2)
        }
        let r = Repr::deserialize(v).map_err(|e| Error::Input(e.to_string()))?;
        let points = r
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| parse_point(p, i, checked))
            .collect::<Result<Vec<_>>>()?;
        let s = LysSurface {
            n: r.n,
            m: r.m,
            k: r.k,
            chi_complement: r.chi_complement,
            chi_curve_smooth: r.chi_curve_smooth,
            points,
        };
        s.validate()?;
        Ok(s)
    }
}

/// A point is `{"name", "zeta": <profile>, "delta"}`, `{"name", "graph"}`
/// or a flat germ summary.
fn parse_point(v: &serde_json::Value, i: usize, checked: bool) -> Result<GermSummary> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input(format!("point {i} must be an object")))?;
    let name = obj
        .get("name")
        .and_then(|n| n.as_str())
        .map(str::to_string)
        .unwrap_or_else(|| format!("q{}", i + 1));
    if let Some(g) = obj.get("graph") {
        if obj.keys().any(|k| k != "name" && k != "graph") {
            return Err(Error::Input(format!("point {name}: \"graph\" excludes other fields")));
        }
        let g = CurveResolutionGraph::deserialize(g).map_err(|e| Error::Input(format!("point {name}: {e}")))?;
        return GermSummary::from_graph(name, &g);
    }
    if let Some(z) = obj.get("zeta") {
        if obj.keys().any(|k| !matches!(k.as_str(), "name" | "zeta" | "delta")) {
            return Err(Error::Input(format!("point {name}: unknown field")));
        }
        let delta = obj
            .get("delta")
            .ok_or_else(|| Error::Input(format!("point {name} needs \"delta\"")))?;
        let mut flat = z
            .as_object()
            .cloned()
            .ok_or_else(|| Error::Input(format!("point {name}: zeta must be an object")))?;
        flat.insert("delta".into(), delta.clone());
        flat.insert("name".into(), serde_json::Value::String(name));
        return GermSummary::from_json(&serde_json::Value::Object(flat), checked);
    }
    let mut flat = obj.clone();
    flat.insert("name".into(), serde_json::Value::String(name));
    GermSummary::from_json(&serde_json::Value::Object(flat), checked)
}

impl Serialize for LysSurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Point<'a> {
            name: &'a str,
            zeta: &'a crate::suspension::ZetaProfile,
            delta: &'a CycloProduct,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            n: serde_json::Value,
            m: serde_json::Value,
            k: serde_json::Value,
            chi_complement: serde_json::Value,
            chi_curve_smooth: serde_json::Value,
            points: Vec<Point<'a>>,
        }
        Out {
            n: json::json_int(&self.n),
            m: json::json_int(&self.m),
            k: json::json_int(&self.k),
            chi_complement: json::json_int(&self.chi_complement),
            chi_curve_smooth: json::json_int(&self.chi_curve_smooth),
            points: self
                .points
                .iter()
                .map(|p| Point {
                    name: &p.name,
                    zeta: &p.zeta,
                    delta: &p.delta,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LysSurface {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        LysSurface::from_json(&v, true).map_err(serde::de::Error::custom)
    }
}

fn rf(num: Poly, den: Poly) -> RatFun {
    RatFun::new(num, den).expect("nonzero denominator")
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `Z^(e)(f_q, a s + b)` for every point.
fn local_at(s: &LysSurface, a: &BigRational, b: &BigRational, e: &BigInt) -> Result<Vec<RatFun>> {
    s.points
        .iter()
        .map(|p| p.zeta.get(e)?.substitute_affine(a, b))
        .collect()
}

fn sum(v: Vec<RatFun>) -> RatFun {
    v.into_iter().sum()
}

/// `Z_top^(ℓ)(F, s)` with `r = (1 + n + (m + k)s)/k`.
pub fn lys_ztop(s: &LysSurface, l: &BigInt) -> Result<RatFun> {
    s.validate()?;
    if !l.is_positive() {
        return Err(Error::Input("l must be positive".into()));
    }
    let (n, m, k) = (&s.n, &s.m, &s.k);
    let mk = m + k;
    let n1: BigInt = n + 1;
    let (a, b) = (rat(mk.clone(), k.clone()), rat(n1.clone(), k.clone()));
    // k r and k (r − s)
    let kr = Poly::linear(n1.clone(), mk.clone());
    let krs = Poly::linear(n1.clone(), m.clone());
    let global = rf(Poly::constant(s.chi_complement.clone()), krs.clone());
    let one = BigInt::one();
    let npts = BigInt::from(s.points.len());
    let zr = |e: &BigInt| local_at(s, &a, &b, e).map(sum);
    let nontrivial = || -> Result<RatFun> {
        let mut acc = RatFun::zero();
        for e in divisors(k).into_iter().filter(|e| !e.is_one()) {
            acc = &acc + &zr(&e)?.scale(&rat(jordan_totient(2, &e), k.clone()));
        }
        Ok(acc)
    };
    if l.is_one() {
        let smooth = rf(
            Poly::constant(s.chi_curve_smooth.clone()),
            &krs * &Poly::linear(1, 1),
        );
        // ∑ A_q / k
        let coef = rf(
            &(&Poly::linear(0, 1) * &Poly::linear(k - &n1, -m)) * &Poly::linear(&n1 + k, mk.clone()),
            (&(&kr * &krs) * &Poly::linear(1, 1)).scale(k),
        );
        let s_over = rf(Poly::linear(0, 1), Poly::linear(1, 1));
        let points = &(&rf(Poly::constant(npts), kr.clone()) + &(&coef * &zr(&one)?))
            - &(&s_over * &nontrivial()?);
        return Ok(&(&global + &smooth) + &points);
    }
    let div_m = m.is_multiple_of(l);
    let div_mk = mk.is_multiple_of(l);
    // ∑_q (1 − (r + 1) Z(f_q, r))/(k r)
    let tail = || -> Result<RatFun> {
        let r1_over_kr = rf(Poly::linear(&n1 + k, mk.clone()), kr.scale(k));
        let base = rf(Poly::constant(npts.clone()), kr.clone());
        Ok(&(&base - &(&r1_over_kr * &zr(&one)?)) - &nontrivial()?)
    };
    let twisted = || -> Result<RatFun> { Ok(&zr(l)? * &rf(Poly::one(), krs.clone())) };
    let lcm_sum = || -> Result<RatFun> {
        let fm = frak_m(k, l, &mk);
        let mut acc = RatFun::zero();
        for e in divisors(k) {
            acc = &acc + &zr(&e.lcm(&fm))?.scale(&rat(jordan_totient(2, &e), k.clone()));
        }
        Ok(acc)
    };
    match (div_mk, div_m) {
        (true, true) => Ok(&(&global + &tail()?) + &twisted()?),
        (true, false) => tail(),
        (false, true) => Ok(&(&global + &twisted()?) - &lcm_sum()?),
        (false, false) => Ok(-lcm_sum()?),
    }
}

/// Superisolated case `k = 1`, with `t = (1 + m)s + n + 1`.
pub fn sis_ztop(s: &LysSurface, l: &BigInt) -> Result<RatFun> {
    s.validate()?;
    if !s.k.is_one() {
        return Err(Error::Input(format!("sis_ztop needs k = 1, got k = {}", s.k)));
    }
    if !l.is_positive() {
        return Err(Error::Input("l must be positive".into()));
    }
    let (n, m) = (&s.n, &s.m);
    let n1: BigInt = n + 1;
    let m1: BigInt = m + 1;
    let a = BigRational::from_integer(m1.clone());
    let b = BigRational::from_integer(n1.clone());
    let t = Poly::linear(n1.clone(), m1.clone());
    // t − s = m s + n + 1
    let ts = Poly::linear(n1.clone(), m.clone());
    let zt = |e: &BigInt| local_at(s, &a, &b, e).map(sum);
    let npts = BigInt::from(s.points.len());
    if l.is_one() {
        let global = rf(Poly::constant(s.chi_complement.clone()), ts.clone());
        let smooth = rf(Poly::constant(s.chi_curve_smooth.clone()), &ts * &Poly::linear(1, 1));
        // s (t + 1)(s − t + 1)/(t (s + 1)(t − s))
        let coef = rf(
            &(&Poly::linear(0, 1) * &Poly::linear(&n1 + 1, m1.clone())) * &Poly::linear(-n, -m),
            &(&t * &Poly::linear(1, 1)) * &ts,
        );
        let pts = &rf(Poly::constant(npts), t.clone()) + &(&coef * &zt(&BigInt::one())?);
        return Ok(&(&global + &smooth) + &pts);
    }
    if m1.is_multiple_of(l) {
        let inner = &RatFun::from_int(npts) - &(&RatFun::from_poly(Poly::linear(&n1 + 1, m1.clone())) * &zt(&BigInt::one())?);
        return Ok(&inner * &rf(Poly::one(), t));
    }
    if m.is_multiple_of(l) {
        let inner = &RatFun::from_int(s.chi_complement.clone())
            + &(&RatFun::from_poly(Poly::linear(-n, -m)) * &zt(l)?);
        return Ok(&inner * &rf(Poly::one(), ts));
    }
    let l1 = l / l.gcd(&m1);
    Ok(-zt(&l1)?)
}

/// `Δ = (τ^m − 1)^{χ(ℙ² \ C)}/(τ − 1)·∏_q Δ_q^(k)(τ^{m+k})` and `Δ̃ = (τ − 1)Δ`.
pub fn lys_charpoly(s: &LysSurface) -> Result<(CycloProduct, CycloProduct)> {
    s.validate()?;
    s.require_surface("lys_charpoly")?;
    let mk = &s.m + &s.k;
    let mut tilde = CycloProduct::bracket(s.m.clone(), s.chi_complement.clone());
    for p in &s.points {
        tilde = tilde.mul(&p.delta.power_transform(&s.k).variable_power(&mk));
    }
    if !tilde.is_polynomial() {
        return Err(Error::validation(
            "chi_complement",
            format!("(tau - 1)*Delta = {tilde} is not a polynomial; inconsistent input"),
        ));
    }
    let delta = tilde.div(&CycloProduct::bracket(1, 1));
    Ok((delta, tilde))
}

/// `closure({m if χ(ℙ² \ C) ≠ 0} ∪ {𝔫(d, m, k) : d ∈ orders(Δ_q)})`,
/// checked against the root orders of `Δ̃`.
pub fn lys_orders(s: &LysSurface) -> Result<OrderSet> {
    s.validate()?;
    s.require_surface("lys_orders")?;
    let mut gens = OrderSet::new();
    if !s.chi_complement.is_zero() {
        gens.insert(s.m.clone());
    }
    for p in &s.points {
        for d in p.delta.root_orders().iter() {
            gens.insert(frak_n(d, &s.m, &s.k));
        }
    }
    let formula = gens.divisor_closure();
    let (_, tilde) = lys_charpoly(s)?;
    let mut from_delta = tilde.root_orders().divisor_closure();
    from_delta.insert(BigInt::one());
    let mut lhs = formula.clone();
    lhs.insert(BigInt::one());
    if lhs != from_delta {
        return Err(Error::validation(
            "points",
            format!("order closure {lhs} differs from the root orders {from_delta} of (tau - 1)*Delta"),
        ));
    }
    Ok(formula)
}

/// `{1, (n + 1)/m} ∪ {𝔞(ρ₀, n + 1, m, k) : ρ₀ ∈ Pol⁺(f_q)}`.
pub fn lys_candidate_poles(s: &LysSurface) -> Result<BTreeSet<BigRational>> {
    let mut out = BTreeSet::new();
    out.insert(BigRational::one());
    let n1: BigInt = &s.n + 1;
    out.insert(rat(n1.clone(), s.m.clone()));
    for p in &s.points {
        for rho in p.zeta.get(&BigInt::one())?.pol_plus()? {
            out.insert(frak_a(&rho, &n1, &s.m, &s.k));
        }
    }
    Ok(out)
}

/// `s₀ = −(n + 1)/m`.
pub fn lct_candidate(s: &LysSurface) -> BigRational {
    -rat(&s.n + 1, s.m.clone())
}

/// `𝓡(C) = χ(ℙⁿ \ C) + m/(m − n − 1)·χ(C \ Sing C) + ∑_q Z(f_q, s₀)`.
pub fn r_invariant(s: &LysSurface) -> Result<BigRational> {
    s.validate()?;
    let n1: BigInt = &s.n + 1;
    if s.m == n1 {
        return Err(Error::MultiplePoleRegime(format!(
            "m = n + 1 = {n1}: the candidate coincides with -1"
        )));
    }
    let s0 = lct_candidate(s);
    let mut total = BigRational::from_integer(s.chi_complement.clone())
        + rat(&s.m * &s.chi_curve_smooth, &s.m - &n1);
    for p in &s.points {
        let z = p.zeta.get(&BigInt::one())?;
        total += z.evaluate(&s0).map_err(|_| {
            Error::MultiplePoleRegime(format!("{s0} is a pole of the local zeta function at {}", p.name))
        })?;
    }
    Ok(total)
}

/// Residue of `Z_top(F, s)` at `−(n + 1)/m`, equal to `𝓡(C)/m` in the
/// simple-pole regime.
pub fn residue_lct(s: &LysSurface) -> Result<BigRational> {
    Ok(r_invariant(s)? / BigRational::from_integer(s.m.clone()))
}

/// `m > 3`, `χ(ℙ² \ C) ≤ 0` and `−3/m` is not a pole of any `Z(f_q)`.
pub fn is_bad_divisor(s: &LysSurface) -> Result<bool> {
    s.validate()?;
    s.require_surface("is_bad_divisor")?;
    if s.m <= BigInt::from(3) || s.chi_complement.is_positive() {
        return Ok(false);
    }
    let s0 = lct_candidate(s);
    for p in &s.points {
        if p.zeta.get(&BigInt::one())?.evaluate(&s0).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}
