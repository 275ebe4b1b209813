//! Zeta transfer from `f` to the generalized suspension `G = z^m (z^k + f)`
//! and to the suspension `F = z^k + f`, eigenvalue-order transfer and
//! f-bad integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, frak_m, jordan_totient};
use crate::cyclo::{CycloProduct, OrderSet};
use crate::error::{Error, Result};
use crate::json;
use crate::par::Exec;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::resolution::{CurveResolutionGraph, StratifiedResolution};

/// The family `ℓ ↦ Z_top^(ℓ)(f, s)`. Absent entries are the zero function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaProfile {
    entries: BTreeMap<BigInt, RatFun>,
    prod_nu0: BigInt,
    strict: bool,
}

impl ZetaProfile {
    /// Validated profile: `Z^(1)` present, `Z^(1)(0) = 1/prod_nu0` and the
    /// stored support closed under divisors.
    pub fn new(entries: BTreeMap<BigInt, RatFun>, prod_nu0: BigInt) -> Result<Self> {
        let p = ZetaProfile::unchecked(entries, prod_nu0)?;
        p.validate()?;
        Ok(p)
    }

    /// Only positivity of indices and of `prod_nu0` is checked.
    pub fn unchecked(entries: BTreeMap<BigInt, RatFun>, prod_nu0: BigInt) -> Result<Self> {
        if !prod_nu0.is_positive() {
            return Err(Error::validation("prod_nu0", "must be a positive integer"));
        }
        if let Some(l) = entries.keys().find(|l| !l.is_positive()) {
            return Err(Error::validation("ell", format!("index {l} is not positive")));
        }
        let entries = entries.into_iter().map(|(l, f)| (l, f.reduced())).collect();
        Ok(ZetaProfile {
            entries,
            prod_nu0,
            strict: false,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let one = BigInt::one();
        let z = self
            .entries
            .get(&one)
            .ok_or_else(|| Error::validation("entries", "entry for ell = 1 is missing"))?;
        let at0 = z
            .evaluate(&BigRational::zero())
            .map_err(|_| Error::validation("entries", "Z(f, s) has a pole at s = 0"))?;
        let expect = BigRational::new(one, self.prod_nu0.clone());
        if at0 != expect {
            return Err(Error::validation(
                "entries",
                format!("Z(f, 0) = {at0}, expected 1/prod_nu0 = {expect}"),
            ));
        }
        for (l, f) in &self.entries {
            if f.is_zero() {
                continue;
            }
            if let Some(d) = divisors(l).into_iter().find(|d| !self.entries.contains_key(d)) {
                return Err(Error::validation(
                    "entries",
                    format!("Z^({l}) is stored but its divisor {d} is not"),
                ));
            }
        }
        Ok(())
    }

    /// Missing entries become an error instead of zero.
    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn prod_nu0(&self) -> &BigInt {
        &self.prod_nu0
    }

    pub fn entries(&self) -> &BTreeMap<BigInt, RatFun> {
        &self.entries
    }

    pub fn get(&self, l: &BigInt) -> Result<RatFun> {
        match self.entries.get(l) {
            Some(f) => Ok(f.clone()),
            None if self.strict => Err(Error::MissingEntry(l.to_string())),
            None => Ok(RatFun::zero()),
        }
    }

    /// Indices with a nonzero entry.
    pub fn support(&self) -> BTreeSet<BigInt> {
        self.entries
            .iter()
            .filter(|(_, f)| !f.is_zero())
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Every entry at `a·s + b`.
    pub fn shifted(&self, a: &BigRational, b: &BigRational) -> Result<BTreeMap<BigInt, RatFun>> {
        self.entries
            .iter()
            .map(|(l, f)| Ok((l.clone(), f.substitute_affine(a, b)?)))
            .collect()
    }

    pub fn from_strata(res: &StratifiedResolution) -> Result<Self> {
        res.validate(true)?;
        let mut ls = BTreeSet::new();
        for c in &res.components {
            ls.extend(divisors(&c.n));
        }
        let entries = ls.into_iter().map(|l| {
            let z = res.ztop(&l);
            (l, z)
        });
        ZetaProfile::new(prune(entries.collect()), res.prod_nu0.clone())
    }

    pub fn from_graph(g: &CurveResolutionGraph) -> Result<Self> {
        g.validate()?;
        ZetaProfile::from_strata(&g.strata())
    }
}

/// Keeps the divisor closure of the nonzero support (and `ℓ = 1`).
fn prune(entries: BTreeMap<BigInt, RatFun>) -> BTreeMap<BigInt, RatFun> {
    let nonzero: Vec<BigInt> = entries
        .iter()
        .filter(|(_, f)| !f.is_zero())
        .map(|(l, _)| l.clone())
        .collect();
    entries
        .into_iter()
        .filter(|(l, _)| l.is_one() || nonzero.iter().any(|s| s.is_multiple_of(l)))
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    #[serde(with = "json::big")]
    ell: BigInt,
    num: Vec<serde_json::Value>,
    den: Vec<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRepr {
    #[serde(with = "json::big", default = "json::one")]
    prod_nu0: BigInt,
    entries: Vec<EntryRepr>,
}

fn entries_from_repr(v: Vec<EntryRepr>) -> Result<BTreeMap<BigInt, RatFun>> {
    let mut out = BTreeMap::new();
    for e in v {
        let f = RatFun::deserialize(serde_json::json!({"num": e.num, "den": e.den}))
            .map_err(|err| Error::Input(format!("entry ell = {}: {err}", e.ell)))?;
        if out.insert(e.ell.clone(), f).is_some() {
            return Err(Error::validation("entries", format!("duplicate ell = {}", e.ell)));
        }
    }
    Ok(out)
}

impl ZetaProfile {
    /// Parses the JSON form, validating unless `checked` is false.
    pub fn from_json(v: &serde_json::Value, checked: bool) -> Result<Self> {
        let r = ProfileRepr::deserialize(v).map_err(|e| Error::Input(e.to_string()))?;
        let entries = entries_from_repr(r.entries)?;
        if checked {
            ZetaProfile::new(entries, r.prod_nu0)
        } else {
            ZetaProfile::unchecked(entries, r.prod_nu0)
        }
    }

    fn entry_reprs(&self) -> Vec<EntryRepr> {
        self.entries
            .iter()
            .map(|(l, f)| {
                let (num, den) = f.canonical_coeffs();
                EntryRepr {
                    ell: l.clone(),
                    num: num.into_iter().map(serde_json::Value::String).collect(),
                    den: den.into_iter().map(serde_json::Value::String).collect(),
                }
            })
            .collect()
    }
}

impl Serialize for ZetaProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            prod_nu0: serde_json::Value,
            entries: Vec<EntryRepr>,
        }
        Out {
            prod_nu0: json::json_int(&self.prod_nu0),
            entries: self.entry_reprs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaProfile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        ZetaProfile::from_json(&v, true).map_err(serde::de::Error::custom)
    }
}

/// Local data at a singular point: twisted zeta family and the
/// characteristic polynomial of the monodromy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermSummary {
    pub name: String,
    pub zeta: ZetaProfile,
    pub delta: CycloProduct,
}

impl GermSummary {
    pub fn new(name: impl Into<String>, zeta: ZetaProfile, delta: CycloProduct) -> Result<Self> {
        if !delta.is_polynomial() {
            return Err(Error::validation("delta", format!("{delta} is not a polynomial")));
        }
        Ok(GermSummary {
            name: name.into(),
            zeta,
            delta,
        })
    }

    /// Summary of a plane curve germ given by its resolution graph.
    pub fn from_graph(name: impl Into<String>, g: &CurveResolutionGraph) -> Result<Self> {
        GermSummary::new(name, ZetaProfile::from_graph(g)?, g.acampo()?.delta)
    }

    pub fn from_json(v: &serde_json::Value, checked: bool) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("germ summary must be an object".into()))?;
        let mut rest = obj.clone();
        let name = match rest.remove("name") {
            Some(serde_json::Value::String(s)) => s,
            Some(other) => return Err(Error::Input(format!("name must be a string, got {other}"))),
            None => String::new(),
        };
        let delta = rest
            .remove("delta")
            .ok_or_else(|| Error::Input("germ summary needs \"delta\"".into()))?;
        let delta = CycloProduct::deserialize(delta).map_err(|e| Error::Input(e.to_string()))?;
        let zeta = ZetaProfile::from_json(&serde_json::Value::Object(rest), checked)?;
        GermSummary::new(name, zeta, delta)
    }
}

impl Serialize for GermSummary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            name: &'a str,
            prod_nu0: serde_json::Value,
            entries: Vec<EntryRepr>,
            delta: &'a CycloProduct,
        }
        Out {
            name: &self.name,
            prod_nu0: json::json_int(&self.zeta.prod_nu0),
            entries: self.zeta.entry_reprs(),
            delta: &self.delta,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GermSummary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GermSummary::from_json(&v, true).map_err(serde::de::Error::custom)
    }
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rf(num: Poly, den: Poly) -> RatFun {
    RatFun::new(num, den).expect("nonzero denominator")
}

fn check_args(m: &BigInt, k: &BigInt, nu_z: &BigInt, l: &BigInt) -> Result<()> {
    if m.is_negative() {
        return Err(Error::Input("m must be non-negative".into()));
    }
    if !k.is_positive() || !nu_z.is_positive() || !l.is_positive() {
        return Err(Error::Input("k, nu_z and l must be positive".into()));
    }
    Ok(())
}

/// `∑_{e | k} J₂(e)/k · Z^(idx(e))`, skipping `e = 1` when `skip_one`.
fn jordan_sum(
    zr: &dyn Fn(&BigInt) -> Result<RatFun>,
    k: &BigInt,
    skip_one: bool,
    idx: impl Fn(&BigInt) -> BigInt,
) -> Result<RatFun> {
    let mut acc = RatFun::zero();
    for e in divisors(k) {
        if skip_one && e.is_one() {
            continue;
        }
        let z = zr(&idx(&e))?;
        if !z.is_zero() {
            acc = &acc + &z.scale(&q(jordan_totient(2, &e), k.clone()));
        }
    }
    Ok(acc)
}

/// Cases (Z1)–(Z5); `zr(e)` is `Z^(e)(f, r)`.
fn g_formula(
    zr: &dyn Fn(&BigInt) -> Result<RatFun>,
    prod_nu0: &BigInt,
    m: &BigInt,
    k: &BigInt,
    nu_z: &BigInt,
    l: &BigInt,
) -> Result<RatFun> {
    let mk = m + k;
    // k r = (m + k)s + ν_z, k (r − s) = m s + ν_z
    let kr = Poly::linear(nu_z.clone(), mk.clone());
    let k_r_minus_s = Poly::linear(nu_z.clone(), m.clone());
    let base = || rf(Poly::constant(1), kr.scale(prod_nu0));
    // (r + 1)/(k r)
    let r_plus_one_over_kr = || rf(Poly::linear(nu_z + k, mk.clone()), kr.scale(k));
    let one = BigInt::one();
    if l.is_one() {
        let z = zr(&one)?;
        // s (s − r + 1)(r + 1) / (k r (r − s)(s + 1))
        let coef = rf(
            &(&Poly::linear(0, 1) * &Poly::linear(k - nu_z, -m)) * &Poly::linear(nu_z + k, mk.clone()),
            (&(&kr * &k_r_minus_s) * &Poly::linear(1, 1)).scale(k),
        );
        let s_over = rf(Poly::linear(0, 1), Poly::linear(1, 1));
        let sum = jordan_sum(zr, k, true, |e| e.clone())?;
        return Ok(&(&base() + &(&coef * &z)) - &(&s_over * &sum));
    }
    let div_m = m.is_multiple_of(l);
    let div_mk = mk.is_multiple_of(l);
    let zl = || -> Result<RatFun> { Ok(&zr(l)? * &rf(Poly::one(), k_r_minus_s.clone())) };
    let untwisted_tail = || -> Result<RatFun> {
        let z = zr(&one)?;
        let sum = jordan_sum(zr, k, true, |e| e.clone())?;
        Ok(&(&base() - &(&r_plus_one_over_kr() * &z)) - &sum)
    };
    let lcm_sum = || {
        let fm = frak_m(k, l, &mk);
        jordan_sum(zr, k, false, |e| e.lcm(&fm))
    };
    match (div_mk, div_m) {
        (true, true) => Ok(&zl()? + &untwisted_tail()?),
        (true, false) => untwisted_tail(),
        (false, true) => Ok(&zl()? - &lcm_sum()?),
        (false, false) => Ok(-lcm_sum()?),
    }
}

/// `Z_top^(ℓ)(G, ω, s)` for `G = z^m (z^k + f)` and
/// `ω = x^ν⁰ z^{ν_z} dx/x dz/z`, with `r = ((m + k)s + ν_z)/k`.
pub fn suspend_g(f: &ZetaProfile, m: &BigInt, k: &BigInt, nu_z: &BigInt, l: &BigInt) -> Result<RatFun> {
    check_args(m, k, nu_z, l)?;
    let a = q(m + k, k.clone());
    let b = q(nu_z.clone(), k.clone());
    let zr = |e: &BigInt| f.get(e)?.substitute_affine(&a, &b);
    g_formula(&zr, &f.prod_nu0, m, k, nu_z, l)
}

/// `Z_top^(ℓ)(F, s)` for `F = z^k + f` (so `m = 0`, `ν_z = 1`), with
/// `t = s + 1/k`. Written independently of [`suspend_g`].
pub fn suspend_f(f: &ZetaProfile, k: &BigInt, l: &BigInt) -> Result<RatFun> {
    check_args(&BigInt::zero(), k, &BigInt::one(), l)?;
    let (a, b) = (BigRational::one(), q(1, k.clone()));
    let zt = |e: &BigInt| f.get(e)?.substitute_affine(&a, &b);
    let one = BigInt::one();
    // k t = k s + 1
    let kt = Poly::linear(1, k.clone());
    let base = rf(Poly::constant(1), kt.scale(&f.prod_nu0));
    // (t + 1)/t = (k s + 1 + k)/(k s + 1)
    let t1_over_t = rf(Poly::linear(k + 1, k.clone()), kt.clone());
    if l.is_one() {
        let s_over = rf(Poly::linear(0, 1), Poly::linear(1, 1));
        let z = zt(&one)?;
        let sum = jordan_sum(&zt, k, true, |e| e.clone())?;
        let inner = &(&t1_over_t * &z).scale(&q(k - 1, k.clone())) - &sum;
        return Ok(&base + &(&s_over * &inner));
    }
    if k.is_multiple_of(l) {
        let z = zt(&one)?;
        let sum = jordan_sum(&zt, k, true, |e| e.clone())?;
        let mid = &zt(l)? - &(&t1_over_t * &z).scale(&q(1, k.clone()));
        return Ok(&(&base + &mid) - &sum);
    }
    let fm = frak_m(k, l, k);
    let sum = jordan_sum(&zt, k, false, |e| e.lcm(&fm))?;
    Ok(&zt(l)? - &sum)
}

/// Indices `ℓ` for which `Z^(ℓ)(G)` can be nonzero: divisors of
/// `(m + k)·S` for `S` in the support of `f`.
pub fn natural_support(f: &ZetaProfile, m: &BigInt, k: &BigInt) -> BTreeSet<BigInt> {
    let mk = m + k;
    let mut out = BTreeSet::new();
    out.insert(BigInt::one());
    for s in f.support() {
        out.extend(divisors(&(&mk * s)));
    }
    out
}

/// Profile of `G` over the requested indices (and their divisors), or
/// over [`natural_support`] when `ls` is `None`.
pub fn suspend_profile(
    f: &ZetaProfile,
    m: &BigInt,
    k: &BigInt,
    nu_z: &BigInt,
    ls: Option<&[BigInt]>,
    exec: Exec,
) -> Result<ZetaProfile> {
    check_args(m, k, nu_z, &BigInt::one())?;
    let idx: BTreeSet<BigInt> = match ls {
        Some(ls) => {
            if let Some(l) = ls.iter().find(|l| !l.is_positive()) {
                return Err(Error::Input(format!("ell = {l} is not positive")));
            }
            std::iter::once(BigInt::one())
                .chain(ls.iter().flat_map(divisors))
                .collect()
        }
        None => natural_support(f, m, k),
    };
    let shifted = f.shifted(&q(m + k, k.clone()), &q(nu_z.clone(), k.clone()))?;
    let zr = |e: &BigInt| match shifted.get(e) {
        Some(z) => Ok(z.clone()),
        None if f.strict => Err(Error::MissingEntry(e.to_string())),
        None => Ok(RatFun::zero()),
    };
    let idx: Vec<BigInt> = idx.into_iter().collect();
    let vals = exec.try_map(&idx, |l| {
        g_formula(&zr, &f.prod_nu0, m, k, nu_z, l).map(|z| z.reduced())
    })?;
    let entries: BTreeMap<BigInt, RatFun> = idx.into_iter().zip(vals).collect();
    let entries = if ls.is_none() { prune(entries) } else { entries };
    let out = ZetaProfile::unchecked(entries, &f.prod_nu0 * nu_z)?;
    if f.entries.contains_key(&BigInt::one()) && f.validate().is_ok() {
        out.validate().map_err(|e| Error::Internal(format!("suspended profile: {e}")))?;
    }
    Ok(out)
}

/// Matrix form over the divisors `ℓ_1 = 1 < ℓ_2 < … ` of `k`:
/// `k·ZF(s) = A/t + B·Zf(t)` with `B = k·Id − J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuspendMatrix {
    #[serde(serialize_with = "ser_ints")]
    pub divisors: Vec<BigInt>,
    /// `(1/∏ν⁰)·((s + 1)/s, 1, …, 1)`.
    pub a: Vec<RatFun>,
    #[serde(serialize_with = "ser_matrix")]
    pub b: Vec<Vec<BigInt>>,
    /// `((s + 1)/s·Z(F, s), Z^(ℓ_2)(F, s), …)`.
    pub zf_s: Vec<RatFun>,
    /// `((t + 1)/t·Z(f, t), Z^(ℓ_2)(f, t), …)` as functions of `s`.
    pub zf_t: Vec<RatFun>,
    pub identity_holds: bool,
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(json::json_int).collect::<Vec<_>>().serialize(s)
}

fn ser_matrix<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter()
        .map(|row| row.iter().map(json::json_int).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

pub fn suspend_matrix(f: &ZetaProfile, k: &BigInt) -> Result<SuspendMatrix> {
    if !k.is_positive() {
        return Err(Error::Input("k must be positive".into()));
    }
    let ds = divisors(k);
    let j2: Vec<BigInt> = ds.iter().map(|d| jordan_totient(2, d)).collect();
    let b: Vec<Vec<BigInt>> = (0..ds.len())
        .map(|i| {
            (0..ds.len())
                .map(|j| if i == j { k - &j2[j] } else { -&j2[j] })
                .collect()
        })
        .collect();
    let s_plus_one_over_s = rf(Poly::linear(1, 1), Poly::linear(0, 1));
    let inv_nu = rf(Poly::one(), Poly::constant(f.prod_nu0.clone()));
    let a: Vec<RatFun> = ds
        .iter()
        .map(|d| if d.is_one() { &inv_nu * &s_plus_one_over_s } else { inv_nu.clone() })
        .collect();
    let kt = Poly::linear(1, k.clone());
    let t1_over_t = rf(Poly::linear(k + 1, k.clone()), kt.clone());
    let zf_t = ds
        .iter()
        .map(|d| {
            let z = f.get(d)?.substitute_affine(&BigRational::one(), &q(1, k.clone()))?;
            Ok(if d.is_one() { &t1_over_t * &z } else { z })
        })
        .collect::<Result<Vec<_>>>()?;
    let zf_s = ds
        .iter()
        .map(|d| {
            let z = suspend_f(f, k, d)?;
            Ok(if d.is_one() { &s_plus_one_over_s * &z } else { z })
        })
        .collect::<Result<Vec<_>>>()?;
    // A/t = k·A/(k t)
    let over_t = rf(Poly::constant(k.clone()), kt);
    let identity_holds = (0..ds.len()).all(|i| {
        let mut rhs = &a[i] * &over_t;
        for (bij, z) in b[i].iter().zip(&zf_t) {
            rhs = &rhs + &z.scale_int(bij);
        }
        zf_s[i].scale_int(k) == rhs
    });
    Ok(SuspendMatrix {
        divisors: ds,
        a,
        b,
        zf_s,
        zf_t,
        identity_holds,
    })
}

/// `Z_top^(ℓ)(z² + f, s)` by the 2-adic case split of `ℓ`, `t = s + 1/2`.
/// For odd `ℓ` this is `½Z^(ℓ)(f, t) − (3/2)Z^(2ℓ)(f, t)`, the value of the
/// general suspension formula at `k = 2`.
pub fn k2_twisted(f: &ZetaProfile, l: &BigInt) -> Result<RatFun> {
    let two = BigInt::from(2);
    if !l.is_positive() {
        return Err(Error::Input("l must be positive".into()));
    }
    if l.is_one() {
        return suspend_f(f, &two, l);
    }
    let (a, b) = (BigRational::one(), q(1, 2));
    let zt = |e: &BigInt| f.get(e)?.substitute_affine(&a, &b);
    let half = q(1, 2);
    if l.is_odd() {
        let z = &zt(l)?.scale(&half) - &zt(&(l * &two))?.scale(&q(3, 2));
        return Ok(z);
    }
    if *l == two {
        // ½(1/(t∏ν⁰) − Z^(2)(f,t) − ((t + 1)/t) Z(f,t)), 2t = 2s + 1
        let t = Poly::linear(1, 2);
        let inv_t = rf(Poly::constant(2), t.scale(&f.prod_nu0));
        let t1_over_t = rf(Poly::linear(3, 2), t);
        let inner = &(&inv_t - &zt(&two)?) - &(&t1_over_t * &zt(&BigInt::one())?);
        return Ok(inner.scale(&half));
    }
    let half_l = l / &two;
    if half_l.is_odd() {
        Ok((&zt(&half_l)? + &zt(l)?).scale(&q(-1, 2)))
    } else {
        Ok(-zt(l)?)
    }
}

/// Thom–Sebastiani: `Δ_F` for `F = z^k + f` and its root orders.
pub fn suspend_orders(f: &GermSummary, k: &BigInt, m: &BigInt) -> Result<(CycloProduct, OrderSet)> {
    if !m.is_zero() {
        return Err(Error::Input(
            "suspend_orders is only defined for m = 0; use the lys module for m > 0".into(),
        ));
    }
    let delta = f.delta.thom_sebastiani_tensor(k)?;
    let orders = delta.root_orders();
    if *k == BigInt::from(2) {
        let expect: OrderSet = f.delta.root_orders().iter().map(order_times_minus_one).collect();
        if expect != orders {
            return Err(Error::Internal(format!(
                "k = 2 orders {orders} differ from the order-2 case rule {expect}"
            )));
        }
    }
    Ok((delta, orders))
}

/// Order of `−ζ` for `ζ` of order `d`.
fn order_times_minus_one(d: &BigInt) -> BigInt {
    let four = BigInt::from(4);
    if d.is_odd() {
        d * 2
    } else if d.is_multiple_of(&four) {
        d.clone()
    } else {
        d / 2
    }
}

/// f-bad integers: `ℓ ≡ 2 mod 4` in the closure, `2ℓ` outside it and
/// `ℓ/2` outside the closure of the odd orders.
pub fn fbad_set(orders_f: &OrderSet) -> OrderSet {
    let closure = orders_f.divisor_closure();
    let odd: OrderSet = orders_f.iter().filter(|d| d.is_odd()).cloned().collect();
    let odd_closure = odd.divisor_closure();
    let two = BigInt::from(2);
    let four = BigInt::from(4);
    closure
        .iter()
        .filter(|l| {
            (*l % &four) == two
                && !closure.contains(&(*l * &two))
                && !odd_closure.contains(&(*l / &two))
        })
        .cloned()
        .collect()
}

/// Bad eigenvalue order: `d ∈ orders`, `d ≡ 2 mod 4`, `2d` outside the
/// closure and `d/2 ∉ orders`.
pub fn is_bad_eigenvalue(d: &BigInt, orders_f: &OrderSet) -> bool {
    let two = BigInt::from(2);
    orders_f.contains(d)
        && (d % BigInt::from(4)) == two
        && !orders_f.divisor_closure().contains(&(d * &two))
        && !orders_f.contains(&(d / &two))
}

/// `𝔞(ρ₀, ν, m, k) = (kρ₀ + ν)/(m + k)`.
pub fn frak_a(rho0: &BigRational, nu: &BigInt, m: &BigInt, k: &BigInt) -> BigRational {
    assert!(!(m + k).is_zero(), "m + k must be nonzero");
    (rho0 * BigRational::from_integer(k.clone()) + BigRational::from_integer(nu.clone()))
        / BigRational::from_integer(m + k)
}

/// Superset of `Pol⁺(G, ω)`: `{1, ν_z/m} ∪ {𝔞(ρ₀, ν_z, m, k) : ρ₀ ∈ Pol⁺(f)}`.
pub fn candidate_poles_g(
    pol_f: &BTreeSet<BigRational>,
    m: &BigInt,
    k: &BigInt,
    nu_z: &BigInt,
) -> BTreeSet<BigRational> {
    let mut out = BTreeSet::new();
    out.insert(BigRational::one());
    if m.is_positive() {
        out.insert(q(nu_z.clone(), m.clone()));
    }
    out.extend(pol_f.iter().map(|r| frak_a(r, nu_z, m, k)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn lin(c0: i64, c1: i64) -> Poly {
        Poly::linear(c0, c1)
    }

    /// Twisted zeta of `x⁵ + y⁶`.
    pub(crate) fn x5y6() -> ZetaProfile {
        let mut e = BTreeMap::new();
        e.insert(b(1), rf(lin(11, 10), &lin(11, 30) * &lin(1, 1)));
        for l in [2, 3, 6] {
            e.insert(b(l), rf(Poly::constant(4), lin(11, 30)));
        }
        e.insert(b(5), rf(Poly::constant(5), lin(11, 30)));
        for l in [10, 15, 30] {
            e.insert(b(l), rf(Poly::constant(-1), lin(11, 30)));
        }
        ZetaProfile::new(e, b(1)).unwrap()
    }

    #[test]
    fn example_5_6_10() {
        let f = x5y6();
        let k = b(10);
        let z1 = suspend_f(&f, &k, &b(1)).unwrap();
        assert_eq!(z1, rf(lin(7, 3), &lin(7, 15) * &lin(1, 1)));
        let over = |c: i64, d: i64| rf(Poly::constant(c), lin(7, 15).scale(&b(d)));
        assert_eq!(suspend_f(&f, &k, &b(10)).unwrap(), over(-5, 2));
        assert_eq!(suspend_f(&f, &k, &b(15)).unwrap(), over(7, 2));
        assert_eq!(suspend_f(&f, &k, &b(30)).unwrap(), over(7, 2));
        assert_eq!(suspend_f(&f, &k, &b(5)).unwrap(), over(1, 2));
        assert_eq!(suspend_f(&f, &k, &b(3)).unwrap(), over(6, 1));
        assert_eq!(suspend_f(&f, &k, &b(6)).unwrap(), over(6, 1));
        assert!(suspend_f(&f, &k, &b(7)).unwrap().is_zero());
        for l in 1..=60 {
            assert_eq!(
                suspend_f(&f, &k, &b(l)).unwrap(),
                suspend_g(&f, &b(0), &k, &b(1), &b(l)).unwrap(),
                "l = {l}"
            );
        }
    }

    #[test]
    fn matrix_example() {
        let m = suspend_matrix(&x5y6(), &b(10)).unwrap();
        let expect = [[9, -3, -24, -72], [-1, 7, -24, -72], [-1, -3, -14, -72], [-1, -3, -24, -62]];
        let expect: Vec<Vec<BigInt>> = expect.iter().map(|r| r.iter().map(|&x| b(x)).collect()).collect();
        assert_eq!(m.b, expect);
        assert!(m.identity_holds);
        let p = suspend_matrix(&x5y6(), &b(7)).unwrap();
        assert_eq!(p.b[0], vec![b(6), b(-48)]);
        assert_eq!(p.b[1], vec![b(-1), b(-41)]);
        assert!(p.identity_holds);
    }

    #[test]
    fn lvp_example() {
        let mut e = BTreeMap::new();
        let z = rf(Poly::constant(1), lin(11, 27).scale(&b(2)));
        e.insert(b(27), z.clone());
        e.insert(b(54), z);
        let f = ZetaProfile::unchecked(e, b(1)).unwrap();
        assert!(f.validate().is_err());
        let got = suspend_f(&f, &b(84), &b(27)).unwrap();
        assert_eq!(got, rf(Poly::constant(8), lin(317, 756)));
        assert!(f.clone().with_strict(true).get(&b(3)).is_err());
    }

    #[test]
    fn pole_at_r_zero_cancels() {
        let f = x5y6();
        for (m, k, nu) in [(0, 10, 1), (2, 3, 1), (3, 2, 4)] {
            let z = suspend_g(&f, &b(m), &b(k), &b(nu), &b(1)).unwrap();
            let x = q(-nu, m + k);
            if x != q(-1, 1) {
                assert!(z.evaluate(&x).is_ok(), "m={m} k={k} nu={nu}");
            }
        }
    }

    #[test]
    fn z5_with_zero_entries() {
        let f = x5y6();
        // l = 7 divides neither m nor m + k, and lcm(e, 7) lies outside the support
        assert!(suspend_g(&f, &b(1), &b(3), &b(1), &b(7)).unwrap().is_zero());
    }

    #[test]
    fn k2_cases() {
        let f = x5y6();
        for l in 1..=40 {
            assert_eq!(k2_twisted(&f, &b(l)).unwrap(), suspend_f(&f, &b(2), &b(l)).unwrap(), "l = {l}");
        }
        let mut e = BTreeMap::new();
        e.insert(b(1), rf(Poly::one(), lin(1, 1).pow(2)));
        let node = ZetaProfile::new(e, b(1)).unwrap();
        // ½(1/t − ((t+1)/t)·1/(t+1)²) = 1/(2(t+1)), t = s + 1/2
        assert_eq!(k2_twisted(&node, &b(2)).unwrap(), rf(Poly::constant(1), lin(3, 2)));
        assert!(k2_twisted(&node, &b(8)).unwrap().is_zero());
    }

    #[test]
    fn orders_and_badness() {
        let set = |v: &[i64]| -> OrderSet { v.iter().map(|&x| b(x)).collect() };
        assert_eq!(fbad_set(&set(&[1, 3, 7, 18, 21])), set(&[18]));
        assert!(!fbad_set(&set(&[1, 7, 12, 14])).contains(&b(14)));
        assert!(fbad_set(&set(&[6, 10, 2])).contains(&b(2)));
        assert!(!fbad_set(&set(&[6, 10, 3])).contains(&b(2)));
        assert!(is_bad_eigenvalue(&b(18), &set(&[1, 3, 7, 18, 21])));
        assert!(!is_bad_eigenvalue(&b(14), &set(&[1, 7, 12, 14])));

        let g = GermSummary::new("smooth", x5y6(), CycloProduct::phi(1, 1)).unwrap();
        let (_, o) = suspend_orders(&g, &b(3), &b(0)).unwrap();
        assert_eq!(o, set(&[3]));
        assert!(suspend_orders(&g, &b(3), &b(1)).is_err());
    }

    #[test]
    fn profile_json_roundtrip() {
        let f = x5y6();
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v["entries"][0]["ell"], serde_json::json!(1));
        let back: ZetaProfile = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
        let bad = serde_json::json!({"prod_nu0": 2, "entries": [{"ell": 1, "num": [1], "den": [1, 1]}]});
        assert!(ZetaProfile::from_json(&bad, true).is_err());
        assert!(ZetaProfile::from_json(&bad, false).is_ok());
        let gap = serde_json::json!({"entries": [{"ell": 1, "num": [1], "den": [1, 1]},
                                                 {"ell": 6, "num": [1], "den": [1, 1]}]});
        assert!(ZetaProfile::from_json(&gap, true).is_err());
    }

    #[test]
    fn profile_wrapper_matches_single_calls() {
        let f = x5y6();
        let (m, k, nu) = (b(2), b(4), b(3));
        let p = suspend_profile(&f, &m, &k, &nu, None, Exec::Sequential).unwrap();
        assert_eq!(p.prod_nu0(), &b(3));
        for (l, z) in p.entries() {
            assert_eq!(z, &suspend_g(&f, &m, &k, &nu, l).unwrap());
        }
        let q = suspend_profile(&f, &m, &k, &nu, Some(&[b(12)]), Exec::Parallel).unwrap();
        assert_eq!(q.entries().len(), 6);
    }
}
