//! Combinatorics of embedded resolutions.
//!
//! [`StratifiedResolution`] is the general input: components with numerical
//! data `(N, ν)` and strata `E_I°` with Euler characteristics. For plane
//! curves the usual input is a [`CurveResolutionGraph`], a dual graph whose
//! arrows stand for the strict transform branches; it expands into strata
//! and also feeds A'Campo's formula.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloProduct;
use crate::error::{Error, Result};
use crate::json;
use crate::ratfun::RatFun;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    #[serde(rename = "N", with = "json::big")]
    pub n: BigInt,
    #[serde(with = "json::big")]
    pub nu: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    #[serde(rename = "I")]
    pub ids: Vec<String>,
    #[serde(with = "json::big")]
    pub chi: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratifiedResolution {
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    #[serde(with = "json::big", default = "json::one")]
    pub prod_nu0: BigInt,
}

impl StratifiedResolution {
    /// Structural validation plus, when `check_normalization` is set, the
    /// identity `∑ χ(E_I°)/∏ν_i = 1/∏ν⁰`.
    pub fn validate(&self, check_normalization: bool) -> Result<()> {
        if !self.prod_nu0.is_positive() {
            return Err(Error::validation("prod_nu0", "must be a positive integer"));
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id.as_str()) {
                return Err(Error::validation("components", format!("duplicate id {:?}", c.id)));
            }
            if !c.n.is_positive() || !c.nu.is_positive() {
                return Err(Error::validation(
                    "components",
                    format!("{}: N and nu must be positive", c.id),
                ));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &self.strata {
            if s.ids.is_empty() {
                return Err(Error::validation("strata", "empty index set I"));
            }
            let set: BTreeSet<&str> = s.ids.iter().map(String::as_str).collect();
            if set.len() != s.ids.len() {
                return Err(Error::validation("strata", format!("repeated id in {:?}", s.ids)));
            }
            if let Some(bad) = set.iter().find(|i| !ids.contains(*i)) {
                return Err(Error::validation("strata", format!("unknown component {bad:?}")));
            }
            if !seen.insert(set) {
                return Err(Error::validation("strata", format!("duplicate stratum {:?}", s.ids)));
            }
        }
        if check_normalization {
            let total = self.normalization_sum();
            let want = BigRational::new(BigInt::one(), self.prod_nu0.clone());
            if total != want {
                return Err(Error::validation(
                    "strata",
                    format!("sum of chi/prod(nu) is {total}, expected {want}"),
                ));
            }
        }
        Ok(())
    }

    /// `∑_I χ(E_I°)/∏_{i∈I} ν_i`, i.e. `Z_top(0)`.
    pub fn normalization_sum(&self) -> BigRational {
        let nu: HashMap<&str, &BigInt> =
            self.components.iter().map(|c| (c.id.as_str(), &c.nu)).collect();
        self.strata
            .iter()
            .map(|s| {
                let p: BigInt = s.ids.iter().map(|i| nu[i.as_str()]).product();
                BigRational::new(s.chi.clone(), p)
            })
            .sum()
    }

    /// `Z^(l) = ∑_{I : l | N_i ∀ i ∈ I} χ(E_I°)/∏(N_i s + ν_i)`.
    pub fn ztop(&self, l: &BigInt) -> RatFun {
        assert!(l.is_positive(), "l must be positive");
        let comp: HashMap<&str, &Component> =
            self.components.iter().map(|c| (c.id.as_str(), c)).collect();
        // Group strata by their denominator so that equal products add cheaply.
        let mut groups: BTreeMap<Vec<(BigInt, BigInt)>, BigInt> = BTreeMap::new();
        for s in &self.strata {
            if s.chi.is_zero() {
                continue;
            }
            let cs: Vec<&Component> = s.ids.iter().map(|i| comp[i.as_str()]).collect();
            if cs.iter().all(|c| c.n.is_multiple_of(l)) {
                let mut key: Vec<(BigInt, BigInt)> =
                    cs.iter().map(|c| (c.n.clone(), c.nu.clone())).collect();
                key.sort();
                *groups.entry(key).or_default() += &s.chi;
            }
        }
        let mut total = RatFun::zero();
        for (key, chi) in groups {
            let mut term = RatFun::from_int(chi);
            for (n, nu) in key {
                term = &term * &RatFun::recip_linear(n, nu);
            }
            total = &total + &term;
        }
        total.reduced()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: String,
    #[serde(rename = "N", with = "json::big")]
    pub n: BigInt,
    #[serde(with = "json::big")]
    pub nu: BigInt,
    #[serde(default, with = "json::opt_big", skip_serializing_if = "Option::is_none")]
    pub self_intersection: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arrow {
    pub id: String,
    #[serde(with = "json::big")]
    pub mult: BigInt,
    pub attached_to: String,
}

/// Dual graph of an embedded resolution of a plane curve germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveResolutionGraph {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub edges: Vec<(String, String)>,
    #[serde(with = "json::big")]
    pub prod_nu0: BigInt,
}

/// Graph shape as read from JSON: numerical data may be missing and is then
/// solved from the self-intersections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphShape {
    pub vertices: Vec<ShapeVertex>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(with = "json::big", default = "json::one")]
    pub prod_nu0: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeVertex {
    pub id: String,
    #[serde(rename = "N", default, with = "json::opt_big", skip_serializing_if = "Option::is_none")]
    pub n: Option<BigInt>,
    #[serde(default, with = "json::opt_big", skip_serializing_if = "Option::is_none")]
    pub nu: Option<BigInt>,
    #[serde(default, with = "json::opt_big", skip_serializing_if = "Option::is_none")]
    pub self_intersection: Option<BigInt>,
}

impl<'de> Deserialize<'de> for CurveResolutionGraph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let shape = GraphShape::deserialize(de)?;
        shape.into_graph().map_err(serde::de::Error::custom)
    }
}

/// Connected-component type of `E^(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentType {
    /// A single `E_i°` with `E_i` of valence 2.
    Type1,
    /// `E_0° ∪ E_1° ∪ (E_0 ∩ E_1)` with valences 3 and 1.
    Type2,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnComponent {
    pub strata: Vec<Vec<String>>,
    #[serde(rename = "type")]
    pub tag: ComponentType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Acampo {
    pub zeta: CycloProduct,
    pub delta: CycloProduct,
    pub nonreduced_arrows: Vec<String>,
}

impl GraphShape {
    /// Fills missing `N`/`ν` via [`solve_multiplicities`] and validates.
    pub fn into_graph(self) -> Result<CurveResolutionGraph> {
        let complete = self.vertices.iter().all(|v| v.n.is_some() && v.nu.is_some());
        if complete {
            let g = CurveResolutionGraph {
                vertices: self
                    .vertices
                    .into_iter()
                    .map(|v| Vertex {
                        id: v.id,
                        n: v.n.unwrap(),
                        nu: v.nu.unwrap(),
                        self_intersection: v.self_intersection,
                    })
                    .collect(),
                arrows: self.arrows,
                edges: self.edges,
                prod_nu0: self.prod_nu0,
            };
            g.validate()?;
            Ok(g)
        } else {
            solve_multiplicities(&self)
        }
    }

    fn structural_checks(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::validation("vertices", "graph has no exceptional vertex"));
        }
        if !self.prod_nu0.is_positive() {
            return Err(Error::validation("prod_nu0", "must be a positive integer"));
        }
        let mut ids = BTreeSet::new();
        for id in self
            .vertices
            .iter()
            .map(|v| &v.id)
            .chain(self.arrows.iter().map(|a| &a.id))
        {
            if !ids.insert(id.as_str()) {
                return Err(Error::validation("id", format!("duplicate id {id:?}")));
            }
        }
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        for v in &self.vertices {
            if let Some(e) = &v.self_intersection {
                if !e.is_negative() {
                    return Err(Error::validation(
                        "self_intersection",
                        format!("{}: self-intersection must be negative, got {e}", v.id),
                    ));
                }
            }
        }
        for a in &self.arrows {
            if !index.contains_key(a.attached_to.as_str()) {
                return Err(Error::validation(
                    "arrows",
                    format!("{} attached to unknown vertex {:?}", a.id, a.attached_to),
                ));
            }
            if !a.mult.is_positive() {
                return Err(Error::validation("arrows", format!("{}: mult must be positive", a.id)));
            }
        }
        let mut uf = UnionFind::new(self.vertices.len());
        let mut seen = BTreeSet::new();
        for (a, b) in &self.edges {
            let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) else {
                return Err(Error::validation("edges", format!("edge ({a}, {b}) has an unknown end")));
            };
            if i == j {
                return Err(Error::validation("edges", format!("self-loop at {a}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::validation("edges", format!("duplicate edge ({a}, {b})")));
            }
            if !uf.union(i, j) {
                return Err(Error::validation("edges", format!("edge ({a}, {b}) closes a cycle")));
            }
        }
        if uf.count() != 1 {
            return Err(Error::validation("edges", "graph is disconnected"));
        }
        Ok(())
    }
}

impl CurveResolutionGraph {
    /// Shape with every field present, for re-solving or re-serializing.
    pub fn shape(&self) -> GraphShape {
        GraphShape {
            vertices: self
                .vertices
                .iter()
                .map(|v| ShapeVertex {
                    id: v.id.clone(),
                    n: Some(v.n.clone()),
                    nu: Some(v.nu.clone()),
                    self_intersection: v.self_intersection.clone(),
                })
                .collect(),
            arrows: self.arrows.clone(),
            edges: self.edges.clone(),
            prod_nu0: self.prod_nu0.clone(),
        }
    }

    /// Structure, positivity and (with all self-intersections known) the
    /// projection formula `∑_{j∼i} N_j + ∑_{arrows at i} mult = −E_i²·N_i`.
    pub fn validate(&self) -> Result<()> {
        self.shape().structural_checks()?;
        for v in &self.vertices {
            if !v.n.is_positive() || !v.nu.is_positive() {
                return Err(Error::validation(
                    "vertices",
                    format!("{}: N and nu must be positive", v.id),
                ));
            }
        }
        if let Some(bad) = self.projection_formula_failures().first() {
            return Err(Error::validation(
                "self_intersection",
                format!("projection formula fails at {bad}"),
            ));
        }
        Ok(())
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let idx = self.index();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in &self.edges {
            let (i, j) = (idx[a.as_str()], idx[b.as_str()]);
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    fn arrows_at(&self) -> Vec<Vec<&Arrow>> {
        let idx = self.index();
        let mut at = vec![Vec::new(); self.vertices.len()];
        for a in &self.arrows {
            at[idx[a.attached_to.as_str()]].push(a);
        }
        at
    }

    /// Valence of each exceptional vertex (edges plus arrows).
    pub fn valences(&self) -> Vec<usize> {
        let adj = self.neighbours();
        let at = self.arrows_at();
        (0..self.vertices.len()).map(|i| adj[i].len() + at[i].len()).collect()
    }

    pub fn valence(&self, id: &str) -> Option<usize> {
        let i = *self.index().get(id)?;
        Some(self.valences()[i])
    }

    /// Ids of vertices where the projection formula fails; empty unless
    /// every self-intersection is present.
    pub fn projection_formula_failures(&self) -> Vec<String> {
        if self.vertices.iter().any(|v| v.self_intersection.is_none()) {
            return Vec::new();
        }
        let adj = self.neighbours();
        let at = self.arrows_at();
        let mut bad = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let e = -v.self_intersection.clone().unwrap();
            let lhs: BigInt = adj[i].iter().map(|&j| &self.vertices[j].n).sum::<BigInt>()
                + at[i].iter().map(|a| &a.mult).sum::<BigInt>();
            if lhs != e * &v.n {
                bad.push(v.id.clone());
            }
        }
        bad
    }

    /// Adjunction `∑_{j∼i}(ν_j − 1) = −E_i²(ν_i − 1) − 2 − E_i²` for a
    /// standard volume form; `None` when self-intersections are missing.
    pub fn adjunction_holds(&self) -> Option<bool> {
        if self.vertices.iter().any(|v| v.self_intersection.is_none()) {
            return None;
        }
        let adj = self.neighbours();
        Some(self.vertices.iter().enumerate().all(|(i, v)| {
            let e2 = v.self_intersection.clone().unwrap();
            let lhs: BigInt = adj[i]
                .iter()
                .map(|&j| &self.vertices[j].nu - 1)
                .sum::<BigInt>()
                + &e2 * (&v.nu - 1);
            lhs == -BigInt::from(2) - e2
        }))
    }

    pub fn has_nonreduced_arrows(&self) -> bool {
        self.arrows.iter().any(|a| !a.mult.is_one())
    }

    /// Strata inside `π⁻¹(0)`: open exceptional curves, edge points and
    /// arrow attachment points. Arrows become components `(mult, 1)`.
    pub fn strata(&self) -> StratifiedResolution {
        let val = self.valences();
        let mut components: Vec<Component> = self
            .vertices
            .iter()
            .map(|v| Component {
                id: v.id.clone(),
                n: v.n.clone(),
                nu: v.nu.clone(),
            })
            .collect();
        components.extend(self.arrows.iter().map(|a| Component {
            id: a.id.clone(),
            n: a.mult.clone(),
            nu: BigInt::one(),
        }));
        let mut strata: Vec<Stratum> = self
            .vertices
            .iter()
            .zip(&val)
            .map(|(v, &k)| Stratum {
                ids: vec![v.id.clone()],
                chi: BigInt::from(2) - BigInt::from(k),
            })
            .collect();
        strata.extend(self.edges.iter().map(|(a, b)| Stratum {
            ids: vec![a.clone(), b.clone()],
            chi: BigInt::one(),
        }));
        strata.extend(self.arrows.iter().map(|a| Stratum {
            ids: vec![a.attached_to.clone(), a.id.clone()],
            chi: BigInt::one(),
        }));
        StratifiedResolution {
            components,
            strata,
            prod_nu0: self.prod_nu0.clone(),
        }
    }

    pub fn ztop(&self, l: &BigInt) -> RatFun {
        self.strata().ztop(l)
    }

    /// A'Campo: `ζ = ∏(τ^{N_i} − 1)^{χ(E_i°)}` and `Δ = (τ − 1)/ζ`.
    pub fn acampo(&self) -> Result<Acampo> {
        let val = self.valences();
        let brackets: Vec<(BigInt, BigInt)> = self
            .vertices
            .iter()
            .zip(&val)
            .map(|(v, &k)| (v.n.clone(), BigInt::from(2) - BigInt::from(k)))
            .collect();
        let zeta = CycloProduct::from_brackets(&brackets);
        let delta = CycloProduct::bracket(1, 1).div(&zeta);
        if !delta.is_polynomial() {
            return Err(Error::validation(
                "graph",
                format!("A'Campo characteristic polynomial {delta} is not a polynomial"),
            ));
        }
        let nonreduced_arrows = self
            .arrows
            .iter()
            .filter(|a| !a.mult.is_one())
            .map(|a| a.id.clone())
            .collect();
        Ok(Acampo {
            zeta,
            delta,
            nonreduced_arrows,
        })
    }

    /// Connected components of `E^(n)`, the union of strata all of whose
    /// multiplicities are divisible by `n`.
    pub fn e_n_components(&self, n: &BigInt) -> Vec<EnComponent> {
        assert!(n.is_positive(), "n must be positive");
        let val = self.valences();
        let idx = self.index();
        let nv = self.vertices.len();
        let div = |x: &BigInt| x.is_multiple_of(n);
        // element ids: vertices 0..nv, then selected point strata
        let mut labels: Vec<Vec<String>> = Vec::new();
        let mut links: Vec<(usize, usize)> = Vec::new();
        let mut vertex_slot = vec![None; nv];
        for (i, v) in self.vertices.iter().enumerate() {
            if div(&v.n) {
                vertex_slot[i] = Some(labels.len());
                labels.push(vec![v.id.clone()]);
            }
        }
        for (a, b) in &self.edges {
            let (i, j) = (idx[a.as_str()], idx[b.as_str()]);
            if let (Some(si), Some(sj)) = (vertex_slot[i], vertex_slot[j]) {
                let me = labels.len();
                labels.push(vec![a.clone(), b.clone()]);
                links.push((me, si));
                links.push((me, sj));
            }
        }
        for ar in &self.arrows {
            let i = idx[ar.attached_to.as_str()];
            if let (Some(si), true) = (vertex_slot[i], div(&ar.mult)) {
                let me = labels.len();
                labels.push(vec![ar.attached_to.clone(), ar.id.clone()]);
                links.push((me, si));
            }
        }
        let mut uf = UnionFind::new(labels.len());
        for (a, b) in links {
            uf.union(a, b);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..labels.len() {
            groups.entry(uf.find(i)).or_default().push(i);
        }
        groups
            .into_values()
            .map(|members| {
                let strata: Vec<Vec<String>> = members.iter().map(|&m| labels[m].clone()).collect();
                let singles: Vec<usize> = strata
                    .iter()
                    .filter(|s| s.len() == 1)
                    .map(|s| val[idx[s[0].as_str()]])
                    .collect();
                let tag = match (strata.len(), singles.as_slice()) {
                    (1, [2]) => ComponentType::Type1,
                    (3, [a, b]) if (*a, *b) == (3, 1) || (*a, *b) == (1, 3) => ComponentType::Type2,
                    _ => ComponentType::Other,
                };
                EnComponent { strata, tag }
            })
            .collect()
    }
}

/// Solves `M·N = −(arrow mults)` and `M·(ν − 1) = (−2 − E_i²)` for the
/// intersection matrix `M`, filling missing numerical data.
pub fn solve_multiplicities(shape: &GraphShape) -> Result<CurveResolutionGraph> {
    shape.structural_checks()?;
    let n = shape.vertices.len();
    let mut e2 = Vec::with_capacity(n);
    for v in &shape.vertices {
        match &v.self_intersection {
            Some(e) => e2.push(e.clone()),
            None => {
                return Err(Error::validation(
                    "self_intersection",
                    format!("{}: needed to solve for N and nu", v.id),
                ))
            }
        }
    }
    let idx: HashMap<&str, usize> = shape
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.as_str(), i))
        .collect();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        m[i][i] = BigRational::from_integer(e2[i].clone());
    }
    for (a, b) in &shape.edges {
        let (i, j) = (idx[a.as_str()], idx[b.as_str()]);
        m[i][j] += BigRational::one();
        m[j][i] += BigRational::one();
    }
    let mut rhs_n = vec![BigRational::zero(); n];
    for a in &shape.arrows {
        rhs_n[idx[a.attached_to.as_str()]] -= BigRational::from_integer(a.mult.clone());
    }
    let rhs_nu: Vec<BigRational> = e2
        .iter()
        .map(|e| BigRational::from_integer(BigInt::from(-2) - e))
        .collect();
    let sol_n = solve_linear(&m, &rhs_n)?;
    let sol_k = solve_linear(&m, &rhs_nu)?;
    let mut vertices = Vec::with_capacity(n);
    for (i, v) in shape.vertices.iter().enumerate() {
        let ni = integral_positive(&sol_n[i], &v.id, "N")?;
        let nui = integral_positive(&(&sol_k[i] + BigRational::one()), &v.id, "nu")?;
        if let Some(given) = &v.n {
            if *given != ni {
                return Err(Error::validation("N", format!("{}: given {given}, solved {ni}", v.id)));
            }
        }
        if let Some(given) = &v.nu {
            if *given != nui {
                return Err(Error::validation("nu", format!("{}: given {given}, solved {nui}", v.id)));
            }
        }
        vertices.push(Vertex {
            id: v.id.clone(),
            n: ni,
            nu: nui,
            self_intersection: v.self_intersection.clone(),
        });
    }
    let g = CurveResolutionGraph {
        vertices,
        arrows: shape.arrows.clone(),
        edges: shape.edges.clone(),
        prod_nu0: shape.prod_nu0.clone(),
    };
    g.validate()?;
    Ok(g)
}

fn integral_positive(x: &BigRational, id: &str, what: &str) -> Result<BigInt> {
    if !x.is_integer() || !x.is_positive() {
        return Err(Error::NonIntegralSolution(format!("{what}({id}) = {x}")));
    }
    Ok(x.to_integer())
}

/// Gaussian elimination over ℚ; errors on a singular matrix.
pub(crate) fn solve_linear(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.sets -= 1;
        true
    }

    fn count(&self) -> usize {
        self.sets
    }
}
