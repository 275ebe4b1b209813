//! Mechanical checks of the monodromy and holomorphy conjectures on
//! concrete data: a zeta function (or twisted family) against the
//! characteristic polynomial of the monodromy.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloProduct, OrderSet};
use crate::error::{Error, Result};
use crate::json;
use crate::lys::{lys_charpoly, lys_orders, lys_ztop, LysSurface};
use crate::par::Exec;
use crate::ratfun::RatFun;
use crate::resolution::CurveResolutionGraph;
use crate::suspension::{suspend_f, suspend_orders, GermSummary};

/// Upper bound for the default `l_max`.
pub const L_MAX_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleItem {
    #[serde(serialize_with = "ser_rat")]
    pub pole: BigRational,
    #[serde(with = "json::big")]
    pub order: BigInt,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    pub conjecture: &'static str,
    pub verdict: Verdict,
    pub items: Vec<PoleItem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistItem {
    #[serde(with = "json::big")]
    pub ell: BigInt,
    pub ok: bool,
    /// The offending function when `ok` is false.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<RatFun>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HolomorphyReport {
    pub conjecture: &'static str,
    pub verdict: Verdict,
    #[serde(with = "json::big")]
    pub l_max: BigInt,
    /// Indices in `2..=l_max` inside the closure, which carry no constraint.
    pub skipped: usize,
    pub items: Vec<TwistItem>,
}

/// Every pole `−a/b` needs `b = 1` or `Φ_b | Δ̃`.
pub fn check_monodromy(zeta1: &RatFun, delta_tilde: &CycloProduct) -> Result<MonodromyReport> {
    if !delta_tilde.is_polynomial() {
        return Err(Error::Input(format!("{delta_tilde} is not a polynomial")));
    }
    let items: Vec<PoleItem> = zeta1
        .poles_with_multiplicity()?
        .into_iter()
        .map(|(p, _)| {
            let b = p.denom().clone();
            if b.is_one() {
                let note = (p.numer().abs() > BigInt::one()).then(|| "accepted via smooth point".to_string());
                PoleItem {
                    pole: p,
                    order: b,
                    ok: true,
                    note,
                }
            } else {
                let ok = delta_tilde.exponent(&b).is_positive();
                PoleItem {
                    pole: p,
                    order: b,
                    ok,
                    note: None,
                }
            }
        })
        .collect();
    Ok(MonodromyReport {
        conjecture: "monodromy",
        verdict: Verdict::of(items.iter().all(|i| i.ok)),
        items,
    })
}

/// `2·lcm(closure)`, capped at [`L_MAX_CAP`].
pub fn default_l_max(orders: &OrderSet) -> BigInt {
    let l: BigInt = orders.lcm() * 2;
    l.min(BigInt::from(L_MAX_CAP)).max(BigInt::from(2))
}

/// Every `1 < ℓ ≤ l_max` outside the divisor closure of `orders` needs
/// `Z^(ℓ) = 0`.
pub fn check_holomorphy<F>(family: F, orders: &OrderSet, l_max: &BigInt, exec: Exec) -> Result<HolomorphyReport>
where
    F: Fn(&BigInt) -> Result<RatFun> + Sync + Send,
{
    let top = l_max
        .to_u64()
        .filter(|&x| x <= 10 * L_MAX_CAP)
        .ok_or_else(|| Error::Input(format!("l_max = {l_max} is out of range")))?;
    let closure = orders.divisor_closure();
    let (inside, outside): (Vec<BigInt>, Vec<BigInt>) =
        (2..=top).map(BigInt::from).partition(|l| closure.contains(l));
    let items = exec.try_map(&outside, |l| {
        let z = family(l)?;
        let ok = z.is_zero();
        Ok::<_, Error>(TwistItem {
            ell: l.clone(),
            ok,
            zeta: (!ok).then_some(z),
        })
    })?;
    Ok(HolomorphyReport {
        conjecture: "holomorphy",
        verdict: Verdict::of(items.iter().all(|i| i.ok)),
        l_max: l_max.clone(),
        skipped: inside.len(),
        items,
    })
}

/// Germ presentations accepted by the check drivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckInput {
    Graph(CurveResolutionGraph),
    Lys(LysSurface),
    /// `F = z^k + f`.
    Suspension { k: BigInt, germ: GermSummary },
}

impl CheckInput {
    /// Detects the input kind: `{"suspension": {"k", "germ"}}`, a graph
    /// (`"vertices"`) or a LYS surface (`"chi_complement"`).
    pub fn from_json(v: &serde_json::Value, checked: bool) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("check input must be a JSON object".into()))?;
        if let Some(s) = obj.get("suspension") {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Repr {
                #[serde(with = "json::big")]
                k: BigInt,
                germ: serde_json::Value,
            }
            let r = Repr::deserialize(s).map_err(|e| Error::Input(format!("suspension: {e}")))?;
            if !r.k.is_positive() {
                return Err(Error::validation("k", "must be a positive integer"));
            }
            let germ = if r.germ.get("vertices").is_some() {
                let g = CurveResolutionGraph::deserialize(&r.germ).map_err(|e| Error::Input(e.to_string()))?;
                GermSummary::from_graph("f", &g)?
            } else {
                GermSummary::from_json(&r.germ, checked)?
            };
            return Ok(CheckInput::Suspension { k: r.k, germ });
        }
        if obj.contains_key("vertices") {
            let g = CurveResolutionGraph::deserialize(v).map_err(|e| Error::Input(e.to_string()))?;
            g.validate()?;
            return Ok(CheckInput::Graph(g));
        }
        if obj.contains_key("chi_complement") {
            return Ok(CheckInput::Lys(LysSurface::from_json(v, checked)?));
        }
        Err(Error::Input(
            "cannot detect input kind: expected a resolution graph, a LYS surface or {\"suspension\": ...}".into(),
        ))
    }

    /// `(Z_top(·, s), Δ̃)`.
    pub fn monodromy_data(&self) -> Result<(RatFun, CycloProduct)> {
        let t1 = CycloProduct::bracket(1, 1);
        match self {
            CheckInput::Graph(g) => Ok((g.ztop(&BigInt::one()), g.acampo()?.delta.mul(&t1))),
            CheckInput::Lys(s) => Ok((lys_ztop(s, &BigInt::one())?, lys_charpoly(s)?.1)),
            CheckInput::Suspension { k, germ } => {
                let (delta, _) = suspend_orders(germ, k, &BigInt::from(0))?;
                Ok((suspend_f(&germ.zeta, k, &BigInt::one())?, delta.mul(&t1)))
            }
        }
    }

    /// Eigenvalue orders (before closure).
    pub fn orders(&self) -> Result<OrderSet> {
        match self {
            CheckInput::Graph(g) => Ok(g.acampo()?.delta.root_orders()),
            CheckInput::Lys(s) => lys_orders(s),
            CheckInput::Suspension { k, germ } => Ok(suspend_orders(germ, k, &BigInt::from(0))?.1),
        }
    }

    pub fn twisted(&self, l: &BigInt) -> Result<RatFun> {
        match self {
            CheckInput::Graph(g) => Ok(g.ztop(l)),
            CheckInput::Lys(s) => lys_ztop(s, l),
            CheckInput::Suspension { k, germ } => suspend_f(&germ.zeta, k, l),
        }
    }

    pub fn check_monodromy(&self) -> Result<MonodromyReport> {
        let (z, dt) = self.monodromy_data()?;
        check_monodromy(&z, &dt)
    }

    pub fn check_holomorphy(&self, l_max: Option<&BigInt>, exec: Exec) -> Result<HolomorphyReport> {
        let orders = self.orders()?;
        let l_max = l_max.cloned().unwrap_or_else(|| default_l_max(&orders));
        check_holomorphy(|l| self.twisted(l), &orders, &l_max, exec)
    }
}
