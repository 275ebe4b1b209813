//! Formal products `∏ (τ^m − 1)^n` stored by cyclotomic multiplicities.
//!
//! Monodromy zeta functions and characteristic polynomials of finite-order
//! automorphisms are all of this shape, so they are kept as maps
//! `d ↦ e_d` meaning `∏ Φ_d(τ)^(e_d)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, euler_phi};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct CycloProduct {
    factors: BTreeMap<BigInt, BigInt>,
}

impl CycloProduct {
    /// The constant 1.
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// `Φ_d^e`.
    pub fn phi(d: impl Into<BigInt>, e: impl Into<BigInt>) -> Self {
        CycloProduct::from_cyclotomic([(d.into(), e.into())])
    }

    /// `(τ^m − 1)^n`.
    pub fn bracket(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        CycloProduct::from_brackets(&[(m.into(), n.into())])
    }

    pub fn from_cyclotomic(it: impl IntoIterator<Item = (BigInt, BigInt)>) -> Self {
        let mut out = CycloProduct::one();
        for (d, e) in it {
            assert!(d.is_positive(), "cyclotomic index must be positive");
            out.add_exponent(&d, &e);
        }
        out
    }

    pub fn from_brackets(brackets: &[(BigInt, BigInt)]) -> Self {
        let mut out = CycloProduct::one();
        for (m, n) in brackets {
            assert!(m.is_positive(), "bracket exponent must be positive");
            if n.is_zero() {
                continue;
            }
            for d in divisors(m) {
                out.add_exponent(&d, n);
            }
        }
        out
    }

    fn add_exponent(&mut self, d: &BigInt, e: &BigInt) {
        if e.is_zero() {
            return;
        }
        let entry = self.factors.entry(d.clone()).or_default();
        *entry += e;
        if entry.is_zero() {
            self.factors.remove(d);
        }
    }

    pub fn factors(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.factors
    }

    pub fn exponent(&self, d: &BigInt) -> BigInt {
        self.factors.get(d).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent-wise `a · b^sign`.
    pub fn mul_div(a: &CycloProduct, b: &CycloProduct, sign: i32) -> CycloProduct {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        let mut out = a.clone();
        let s = BigInt::from(sign);
        for (d, e) in &b.factors {
            out.add_exponent(d, &(e * &s));
        }
        out
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        CycloProduct::mul_div(self, other, 1)
    }

    pub fn div(&self, other: &CycloProduct) -> CycloProduct {
        CycloProduct::mul_div(self, other, -1)
    }

    pub fn pow(&self, n: &BigInt) -> CycloProduct {
        let mut out = CycloProduct::one();
        for (d, e) in &self.factors {
            out.add_exponent(d, &(e * n));
        }
        out
    }

    /// Bracket decomposition obtained by peeling the largest order.
    pub fn to_brackets(&self) -> Vec<(BigInt, BigInt)> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some((d, e)) = rest.factors.iter().next_back().map(|(d, e)| (d.clone(), e.clone())) {
            for dd in divisors(&d) {
                rest.add_exponent(&dd, &-&e);
            }
            out.push((d, e));
        }
        out
    }

    /// Characteristic data of the `k`-th power of the automorphism:
    /// `(τ^m − 1)^n ↦ (τ^(m/g) − 1)^(n·g)` with `g = gcd(m, k)`.
    pub fn power_transform(&self, k: &BigInt) -> CycloProduct {
        assert!(k.is_positive(), "k must be positive");
        let brackets: Vec<_> = self
            .to_brackets()
            .into_iter()
            .map(|(m, n)| {
                let g = m.gcd(k);
                (&m / &g, n * g)
            })
            .collect();
        CycloProduct::from_brackets(&brackets)
    }

    /// Substitution `τ ↦ τ^p`.
    pub fn variable_power(&self, p: &BigInt) -> CycloProduct {
        assert!(p.is_positive(), "p must be positive");
        let brackets: Vec<_> = self
            .to_brackets()
            .into_iter()
            .map(|(m, n)| (m * p, n))
            .collect();
        CycloProduct::from_brackets(&brackets)
    }

    /// Orders of actual roots, `{d : e_d > 0}`.
    pub fn root_orders(&self) -> OrderSet {
        OrderSet(
            self.factors
                .iter()
                .filter(|(_, e)| e.is_positive())
                .map(|(d, _)| d.clone())
                .collect(),
        )
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|e| e.is_positive())
    }

    pub fn order_data(&self) -> (OrderSet, bool) {
        (self.root_orders(), self.is_polynomial())
    }

    /// `∑ e_d φ(d)`.
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(d, e)| e * euler_phi(d)).sum()
    }

    /// Eigenvalues `{η ζ : η^k = 1, η ≠ 1, ζ root of self}` with multiplicity.
    pub fn thom_sebastiani_tensor(&self, k: &BigInt) -> Result<CycloProduct> {
        assert!(k.is_positive(), "k must be positive");
        if !self.is_polynomial() {
            return Err(Error::Input(format!(
                "Thom-Sebastiani needs a polynomial, got {self}"
            )));
        }
        let too_big = || Error::EnumerationBound(format!("orders of {self} with k = {k}"));
        let k64 = k.to_u64().ok_or_else(too_big)?;
        let mut big_l = k.clone();
        for d in self.factors.keys() {
            big_l = big_l.lcm(d);
        }
        let l = big_l.to_u128().ok_or_else(too_big)?;
        let mut counts: BTreeMap<u128, BigInt> = BTreeMap::new();
        // Galois conjugation acts on the pairs (ζ, η), so one primitive ζ per
        // order stands for all φ(d) of them.
        for (d, e) in &self.factors {
            let d = d.to_u128().ok_or_else(too_big)?;
            let weight = e * euler_phi(&BigInt::from(d));
            let x = l / d;
            for a in 1..k64 as u128 {
                let y = a * (l / k64 as u128);
                let r = (x + y) % l;
                let ord = l / r.gcd(&l);
                *counts.entry(ord).or_default() += &weight;
            }
        }
        let mut out = CycloProduct::one();
        for (ord, c) in counts {
            let ord = BigInt::from(ord);
            let (q, rem) = c.div_rem(&euler_phi(&ord));
            if !rem.is_zero() {
                return Err(Error::Internal(format!(
                    "eigenvalue count {c} of order {ord} is not Galois stable"
                )));
            }
            out.add_exponent(&ord, &q);
        }
        Ok(out)
    }

    /// `Phi1^2*Phi3*...`, or `1` for the empty product.
    pub fn render_text(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(d, e)| {
                if e.is_one() {
                    format!("Phi{d}")
                } else {
                    format!("Phi{d}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render_latex(&self) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(d, e)| {
                if e.is_one() {
                    format!("\\Phi_{{{d}}}")
                } else {
                    format!("\\Phi_{{{d}}}^{{{e}}}")
                }
            })
            .collect()
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl fmt::Debug for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloProduct({})", self.render_text())
    }
}

struct Exponents<'a>(&'a BTreeMap<BigInt, BigInt>);

impl Serialize for Exponents<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (d, e) in self.0 {
            map.serialize_entry(&d.to_string(), &json_int(e))?;
        }
        map.end()
    }
}

impl Serialize for CycloProduct {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(1))?;
        map.serialize_entry("cyclotomic", &Exponents(&self.factors))?;
        map.end()
    }
}

pub(crate) fn json_int(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

pub(crate) fn parse_int(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| format!("expected an integer, got {n}")),
        serde_json::Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| format!("expected an integer, got {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

impl<'de> Deserialize<'de> for CycloProduct {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            brackets: Option<Vec<(serde_json::Value, serde_json::Value)>>,
            cyclotomic: Option<BTreeMap<String, serde_json::Value>>,
        }
        let r = Repr::deserialize(de)?;
        let pos = |v: BigInt, what: &str| {
            if v.is_positive() {
                Ok(v)
            } else {
                Err(D::Error::custom(format!("{what} must be positive, got {v}")))
            }
        };
        match (r.brackets, r.cyclotomic) {
            (Some(b), None) => {
                let mut bs = Vec::new();
                for (m, n) in b {
                    let m = pos(parse_int(&m).map_err(D::Error::custom)?, "bracket m")?;
                    bs.push((m, parse_int(&n).map_err(D::Error::custom)?));
                }
                Ok(CycloProduct::from_brackets(&bs))
            }
            (None, Some(c)) => {
                let mut fs = Vec::new();
                for (d, e) in c {
                    let d = d
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| D::Error::custom(format!("bad cyclotomic index {d:?}")))?;
                    fs.push((pos(d, "cyclotomic index")?, parse_int(&e).map_err(D::Error::custom)?));
                }
                Ok(CycloProduct::from_cyclotomic(fs))
            }
            _ => Err(D::Error::custom(
                "expected exactly one of \"brackets\" or \"cyclotomic\"",
            )),
        }
    }
}

/// Finite set of eigenvalue orders.
#[derive(Clone, PartialEq, Eq, Default, Debug, Hash, PartialOrd, Ord)]
pub struct OrderSet(pub BTreeSet<BigInt>);

impl OrderSet {
    pub fn new() -> Self {
        OrderSet::default()
    }

    pub fn contains(&self, d: &BigInt) -> bool {
        self.0.contains(d)
    }

    pub fn insert(&mut self, d: BigInt) {
        self.0.insert(d);
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All divisors of all members.
    pub fn divisor_closure(&self) -> OrderSet {
        OrderSet(self.0.iter().flat_map(divisors).collect())
    }

    /// Members not dividing any other member.
    pub fn maximal(&self) -> OrderSet {
        OrderSet(
            self.0
                .iter()
                .filter(|d| !self.0.iter().any(|e| e != *d && e.is_multiple_of(d)))
                .cloned()
                .collect(),
        )
    }

    pub fn lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
    }
}

impl FromIterator<BigInt> for OrderSet {
    fn from_iter<I: IntoIterator<Item = BigInt>>(it: I) -> Self {
        OrderSet(it.into_iter().collect())
    }
}

impl Serialize for OrderSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(json_int))
    }
}

impl fmt::Display for OrderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn br(v: &[(i64, i64)]) -> CycloProduct {
        CycloProduct::from_brackets(&v.iter().map(|&(m, n)| (b(m), b(n))).collect::<Vec<_>>())
    }

    fn cy(v: &[(i64, i64)]) -> CycloProduct {
        CycloProduct::from_cyclotomic(v.iter().map(|&(d, e)| (b(d), b(e))))
    }

    fn os(v: &[i64]) -> OrderSet {
        v.iter().map(|&x| b(x)).collect()
    }

    /// Integer coefficients of `∏ (τ^m − 1)^n` for a polynomial product.
    fn expand(h: &CycloProduct) -> Vec<i64> {
        let mut num = vec![1i64];
        let mut den = vec![1i64];
        for (m, n) in h.to_brackets() {
            let m = m.to_usize().unwrap();
            let mut f = vec![0i64; m + 1];
            f[0] = -1;
            f[m] = 1;
            let target = if n.is_positive() { &mut num } else { &mut den };
            for _ in 0..n.abs().to_usize().unwrap() {
                let mut out = vec![0i64; target.len() + m];
                for (i, a) in target.iter().enumerate() {
                    for (j, c) in f.iter().enumerate() {
                        out[i + j] += a * c;
                    }
                }
                *target = out;
            }
        }
        // exact long division num / den (den monic up to sign)
        let mut q = vec![0i64; num.len() + 1 - den.len()];
        let lead = *den.last().unwrap();
        for i in (0..q.len()).rev() {
            let c = num[i + den.len() - 1] / lead;
            q[i] = c;
            for (j, d) in den.iter().enumerate() {
                num[i + j] -= c * d;
            }
        }
        assert!(num.iter().all(|&c| c == 0), "not a polynomial");
        q
    }

    #[test]
    fn from_brackets_examples() {
        assert_eq!(
            br(&[(1, 1), (18, 1), (21, 2), (6, -1), (9, -1)]),
            cy(&[(1, 2), (3, 1), (7, 2), (18, 1), (21, 2)])
        );
        assert_eq!(
            br(&[(1, 1), (12, 1), (14, 1), (4, -1), (6, -1)]),
            cy(&[(1, 1), (7, 1), (12, 1), (14, 1)])
        );
        assert!(br(&[]).is_one());
    }

    #[test]
    fn brackets_round_trip() {
        let h = br(&[(1, 1), (18, 1), (21, 2), (6, -1), (9, -1)]);
        assert_eq!(CycloProduct::from_brackets(&h.to_brackets()), h);
    }

    #[test]
    fn mul_div_examples() {
        let a = br(&[(6, 1), (9, -2)]);
        assert!(a.mul(&CycloProduct::one().div(&a)).is_one());
        let d = cy(&[(1, 2), (3, 1), (7, 2), (18, 1), (21, 2)]);
        let dt = CycloProduct::mul_div(&d, &br(&[(1, 1)]), 1);
        assert_eq!(dt.exponent(&b(1)), b(3));
        let x = br(&[(6, 1), (9, 1)]);
        let y = br(&[(18, 1), (3, 1)]);
        assert_ne!(x, y);
        // both carry Φ₂ once; the difference sits in Φ₁₈
        assert_eq!(x.exponent(&b(2)), y.exponent(&b(2)));
        assert_ne!(x.exponent(&b(18)), y.exponent(&b(18)));
        assert_ne!(expand(&x), expand(&y));
    }

    #[test]
    fn power_transform_examples() {
        let h = br(&[(12, 2), (5, -1)]);
        assert_eq!(h.power_transform(&b(1)), h);
        for n in 1..30 {
            for k in 1..13 {
                let t = cy(&[(n, 1)]).power_transform(&b(k));
                assert_eq!(t.factors().len(), 1);
                assert!(t.exponent(&b(n / n.gcd(&k))).is_positive());
            }
        }
        assert_eq!(br(&[(4, 1)]).power_transform(&b(2)), br(&[(2, 2)]));
    }

    #[test]
    fn variable_power_examples() {
        let h = br(&[(3, 1), (7, -2)]);
        assert_eq!(h.variable_power(&b(1)), h);
        for k in 1..9 {
            assert_eq!(br(&[(1, 1)]).variable_power(&b(3 + k)), br(&[(3 + k, 1)]));
        }
        // Φ_ab | Φ_a(τ^(bc)) when gcd(a, c) = 1
        for a in 1..12i64 {
            for bb in 1..6 {
                for c in 1..6 {
                    if a.gcd(&c) != 1 {
                        continue;
                    }
                    let v = cy(&[(a, 1)]).variable_power(&b(bb * c));
                    assert!(v.exponent(&b(a * bb)).is_positive(), "a={a} b={bb} c={c}");
                }
            }
        }
    }

    #[test]
    fn order_data_examples() {
        let d = cy(&[(1, 2), (3, 1), (7, 2), (18, 1), (21, 2)]);
        let (ord, poly) = d.order_data();
        assert_eq!(ord, os(&[1, 3, 7, 18, 21]));
        assert!(poly);
        assert_eq!(ord.divisor_closure(), os(&[18, 21]).divisor_closure());
        assert_eq!(CycloProduct::one().order_data(), (OrderSet::new(), true));
        assert!(!br(&[(2, 1), (4, -1)]).is_polynomial());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(cy(&[(1, 1)]).thom_sebastiani_tensor(&b(3)).unwrap(), cy(&[(3, 1)]));
        let odd = cy(&[(1, 2), (3, 1), (7, 2), (21, 2)]);
        assert_eq!(
            odd.thom_sebastiani_tensor(&b(2)).unwrap().root_orders(),
            os(&[2, 6, 14, 42])
        );
        let t = cy(&[(4, 1), (12, 3)]).thom_sebastiani_tensor(&b(2)).unwrap();
        assert!(t.root_orders().contains(&b(4)) && t.root_orders().contains(&b(12)));
        assert!(br(&[(2, -1)]).thom_sebastiani_tensor(&b(2)).is_err());
    }

    #[test]
    fn degree_matches_expansion() {
        let h = br(&[(12, 2), (5, 1), (6, -1)]);
        assert_eq!(h.degree(), b(expand(&h).len() as i64 - 1));
    }

    #[test]
    fn json_forms() {
        let h: CycloProduct = serde_json::from_str(r#"{"brackets":[[1,1],[4,1],[2,-1]]}"#).unwrap();
        assert_eq!(h, cy(&[(1, 1), (4, 1)]));
        let js = serde_json::to_string(&h).unwrap();
        assert_eq!(js, r#"{"cyclotomic":{"1":1,"4":1}}"#);
        let back: CycloProduct = serde_json::from_str(&js).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<CycloProduct>(r#"{"cyclotomic":{"0":1}}"#).is_err());
        assert_eq!(h.render_text(), "Phi1*Phi4");
        assert_eq!(cy(&[(1, 2)]).render_latex(), "\\Phi_{1}^{2}");
    }
}
