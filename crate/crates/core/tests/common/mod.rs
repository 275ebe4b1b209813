#![allow(dead_code)]

use std::path::PathBuf;

use lyzeta::checks::CheckInput;
use lyzeta::lys::LysSurface;
use lyzeta::resolution::{CurveResolutionGraph, GraphShape};
use lyzeta::suspension::{GermSummary, ZetaProfile};
use lyzeta::{Poly, RatFun};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::Value;

pub const GRAPHS: &[&str] = &[
    "node",
    "cusp",
    "a3",
    "triple_cusp",
    "two_cusps",
    "kashiwara_1_27_L",
    "kashiwara_1_27_G",
    "kashiwara_1_23_23_L",
    "kashiwara_1_23_23_G",
    "kashiwara_2_4_25_C2",
    "kashiwara_2_4_25_C5",
    "kashiwara_2_4_25_G",
];

pub const KASHIWARA: &[&str] = &[
    "kashiwara_1_27_L",
    "kashiwara_1_27_G",
    "kashiwara_1_23_23_L",
    "kashiwara_1_23_23_G",
    "kashiwara_2_4_25_C2",
    "kashiwara_2_4_25_C5",
    "kashiwara_2_4_25_G",
];

pub const LYS: &[&str] = &[
    "xyz",
    "x_xz_y2",
    "smooth_quartic",
    "quartic_Ib",
    "quartic_IbL",
    "sextic_Ia",
    "degree10_II",
];

pub const SUSPENSIONS: &[&str] = &["cusp3_k2", "cusp3_k3", "two_cusps_k5", "x5y6_k10"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Value {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap()
}

pub fn graph(name: &str) -> CurveResolutionGraph {
    serde_json::from_value(fixture(&format!("graph_{name}"))).unwrap()
}

pub fn germ(name: &str) -> GermSummary {
    GermSummary::from_graph(name, &graph(name)).unwrap()
}

pub fn profile(name: &str) -> ZetaProfile {
    ZetaProfile::from_json(&fixture(&format!("profile_{name}")), true).unwrap()
}

/// LYS fixture with its `k` replaced.
pub fn lys_k(name: &str, k: i64) -> LysSurface {
    let mut v = fixture(&format!("lys_{name}"));
    v["k"] = k.into();
    LysSurface::from_json(&v, true).unwrap()
}

pub fn lys(name: &str) -> LysSurface {
    LysSurface::from_json(&fixture(&format!("lys_{name}")), true).unwrap()
}

pub fn suspension(name: &str) -> CheckInput {
    CheckInput::from_json(&fixture(&format!("susp_{name}")), true).unwrap()
}

pub fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `c / (a + b s)`.
pub fn c_over(c: i64, a: i64, bb: i64) -> RatFun {
    RatFun::new(Poly::constant(c), Poly::linear(a, bb)).unwrap()
}

pub fn poly(cs: &[i64]) -> Poly {
    Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn rf(num: &[i64], den: &[i64]) -> RatFun {
    RatFun::new(poly(num), poly(den)).unwrap()
}

/// Blow-up history of a plane curve germ with smooth branches, kept at the
/// level of self-intersections so that `N` and `ν` come from the solver.
#[derive(Clone, Debug)]
pub struct BlowUps {
    pub e2: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// Vertex each branch is attached to.
    pub arrows: Vec<usize>,
}

impl BlowUps {
    /// Blow-up of the origin with `r` branches of distinct tangents.
    pub fn start(r: usize) -> Self {
        BlowUps {
            e2: vec![-1],
            edges: Vec::new(),
            arrows: vec![0; r],
        }
    }

    fn new_vertex(&mut self) -> usize {
        self.e2.push(-1);
        self.e2.len() - 1
    }

    /// Blow up the point where branch `a` meets its vertex.
    pub fn at_arrow(&mut self, a: usize) {
        let v = self.arrows[a];
        let w = self.new_vertex();
        self.e2[v] -= 1;
        self.edges.push((v, w));
        self.arrows[a] = w;
    }

    /// Blow up the intersection point of edge `i`.
    pub fn at_edge(&mut self, i: usize) {
        let (u, v) = self.edges[i];
        let w = self.new_vertex();
        self.e2[u] -= 1;
        self.e2[v] -= 1;
        self.edges[i] = (u, w);
        self.edges.push((w, v));
    }

    /// Blow up a generic point of vertex `v`.
    pub fn at_free_point(&mut self, v: usize) {
        let w = self.new_vertex();
        self.e2[v] -= 1;
        self.edges.push((v, w));
    }

    pub fn random_step<R: Rng>(&mut self, rng: &mut R) {
        match rng.gen_range(0..10) {
            0..=4 => {
                let a = rng.gen_range(0..self.arrows.len());
                self.at_arrow(a)
            }
            5..=7 if !self.edges.is_empty() => {
                let i = rng.gen_range(0..self.edges.len());
                self.at_edge(i)
            }
            8 => {
                let v = rng.gen_range(0..self.e2.len());
                self.arrows.push(v);
            }
            _ => {
                let v = rng.gen_range(0..self.e2.len());
                self.at_free_point(v)
            }
        }
    }

    pub fn random<R: Rng>(rng: &mut R, steps: usize) -> Self {
        let mut g = BlowUps::start(rng.gen_range(1..=3));
        for _ in 0..steps {
            g.random_step(rng);
        }
        g
    }

    pub fn shape(&self) -> GraphShape {
        let id = |i: usize| format!("E{i}");
        let v = serde_json::json!({
            "vertices": self.e2.iter().enumerate()
                .map(|(i, e)| serde_json::json!({"id": id(i), "self_intersection": e}))
                .collect::<Vec<_>>(),
            "arrows": self.arrows.iter().enumerate()
                .map(|(j, &v)| serde_json::json!({"id": format!("A{j}"), "mult": 1, "attached_to": id(v)}))
                .collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(a, c)| [id(a), id(c)]).collect::<Vec<_>>(),
        });
        serde_json::from_value(v).unwrap()
    }

    pub fn graph(&self) -> CurveResolutionGraph {
        self.shape().into_graph().unwrap()
    }
}
