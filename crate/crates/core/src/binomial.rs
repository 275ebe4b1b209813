//! Binomial germs `g = z^m (z^k + x^N)` with monomial form
//! `ω = x^ν z^{ν_z} dx/x dz/z`.
//!
//! The open orthant of arc orders splits into the cones
//! `σ⁺ = {⟨N, b_x⟩ < k b_z}`, `ρ = {⟨N, b_x⟩ = k b_z}` and `σ⁻` (the rest).
//! Each cone contributes one term `W•` to the zeta function; `ρ` also
//! carries the extra piece `ρ*` where `z^k + x^N` vanishes to higher order.
//! [`w_top`] gives the closed topological forms, and [`motivic_w`] a
//! symbolic `(𝕃, T)` version whose [`euler_specialize`] must agree with it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// Largest `q` accepted by the fundamental-domain enumeration.
pub const MAX_Q: usize = 6;
const MAX_BOX: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Bullet {
    SigmaPlus,
    SigmaMinus,
    Rho,
    RhoStar,
}

impl Bullet {
    pub const ALL: [Bullet; 4] = [Bullet::SigmaPlus, Bullet::SigmaMinus, Bullet::Rho, Bullet::RhoStar];
}

impl fmt::Display for Bullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bullet::SigmaPlus => "sigma+",
            Bullet::SigmaMinus => "sigma-",
            Bullet::Rho => "rho",
            Bullet::RhoStar => "rho*",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialGerm {
    m: BigInt,
    k: BigInt,
    n: Vec<BigInt>,
    nu: Vec<BigInt>,
    nu_z: BigInt,
    n_q: BigInt,
    e_q: BigInt,
    k_j: Vec<BigInt>,
}

impl BinomialGerm {
    pub fn new(m: BigInt, k: BigInt, n: Vec<BigInt>, nu: Vec<BigInt>, nu_z: BigInt) -> Result<Self> {
        if m.is_negative() {
            return Err(Error::Input("m must be non-negative".into()));
        }
        if !k.is_positive() || !nu_z.is_positive() {
            return Err(Error::Input("k and nu_z must be positive".into()));
        }
        if n.is_empty() || n.len() != nu.len() {
            return Err(Error::Input("N and nu must be non-empty and of equal length".into()));
        }
        if n.iter().chain(&nu).any(|x| !x.is_positive()) {
            return Err(Error::Input("N_j and nu_j must be positive".into()));
        }
        let n_q = n.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let e_q = k.gcd(&n_q);
        let k_j = n.iter().map(|x| k.gcd(x)).collect();
        Ok(BinomialGerm {
            m,
            k,
            n,
            nu,
            nu_z,
            n_q,
            e_q,
            k_j,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn small(m: i64, k: i64, n: &[i64], nu: &[i64], nu_z: i64) -> Result<Self> {
        BinomialGerm::new(
            m.into(),
            k.into(),
            n.iter().map(|&x| x.into()).collect(),
            nu.iter().map(|&x| x.into()).collect(),
            nu_z.into(),
        )
    }

    pub fn q(&self) -> usize {
        self.n.len()
    }
    pub fn m(&self) -> &BigInt {
        &self.m
    }
    pub fn k(&self) -> &BigInt {
        &self.k
    }
    pub fn n(&self) -> &[BigInt] {
        &self.n
    }
    pub fn nu(&self) -> &[BigInt] {
        &self.nu
    }
    pub fn nu_z(&self) -> &BigInt {
        &self.nu_z
    }
    /// `gcd(N_1, …, N_q)`.
    pub fn n_q(&self) -> &BigInt {
        &self.n_q
    }
    /// `gcd(k, n_q)`.
    pub fn e_q(&self) -> &BigInt {
        &self.e_q
    }
    /// `gcd(k, N_j)`.
    pub fn k_j(&self) -> &[BigInt] {
        &self.k_j
    }

    /// Order of `g` along the weight vector `b = (b_x, b_z)`.
    pub fn ord_g(&self, b_x: &[BigInt], b_z: &BigInt) -> BigInt {
        let dot: BigInt = self.n.iter().zip(b_x).map(|(a, b)| a * b).sum();
        &self.m * b_z + (&self.k * b_z).min(dot)
    }

    /// Order of `ω` along `b`.
    pub fn ord_omega(&self, b_x: &[BigInt], b_z: &BigInt) -> BigInt {
        self.nu.iter().zip(b_x).map(|(a, b)| a * b).sum::<BigInt>() + &self.nu_z * b_z
    }
}

/// Multiplicities and fundamental-domain points of `σ⁺` and `ρ`. They
/// depend only on `(k, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData {
    pub k: BigInt,
    pub n: Vec<BigInt>,
    /// `k^q / ∏ k_j`.
    pub mult_sigma_plus: BigInt,
    /// `k^(q−1) e_q / ∏ k_j`.
    pub mult_rho: BigInt,
    pub d_sigma_plus: Vec<Vec<BigInt>>,
    pub d_rho: Vec<Vec<BigInt>>,
}

impl ConeData {
    pub fn new(k: &BigInt, n: &[BigInt]) -> Result<Self> {
        let q = n.len();
        if q == 0 || q > MAX_Q {
            return Err(Error::EnumerationBound(format!("q = {q} outside 1..={MAX_Q}")));
        }
        let kj: Vec<BigInt> = n.iter().map(|x| k.gcd(x)).collect();
        let n_q = n.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let e_q = k.gcd(&n_q);
        let prod_kj: BigInt = kj.iter().product();
        let kq = num_traits::pow(k.clone(), q);
        let mult_sigma_plus = &kq / &prod_kj;
        let mult_rho = &kq / k * &e_q / &prod_kj;
        let rho_rays = rho_rays(k, n)?;
        let mut sp_rays = rho_rays.clone();
        let mut ez = vec![0i64; q + 1];
        ez[q] = 1;
        sp_rays.push(ez);
        let to_big = |pts: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            pts.into_iter()
                .map(|p| p.into_iter().map(BigInt::from).collect())
                .collect()
        };
        let d_sigma_plus = to_big(fundamental_points(&sp_rays)?);
        let d_rho = to_big(fundamental_points(&rho_rays)?);
        if BigInt::from(d_sigma_plus.len()) != mult_sigma_plus {
            return Err(Error::Internal(format!(
                "|D(sigma+)| = {} but mult(sigma+) = {mult_sigma_plus} for k = {k}, N = {n:?}",
                d_sigma_plus.len()
            )));
        }
        if BigInt::from(d_rho.len()) != mult_rho {
            return Err(Error::Internal(format!(
                "|D(rho)| = {} but mult(rho) = {mult_rho} for k = {k}, N = {n:?}",
                d_rho.len()
            )));
        }
        Ok(ConeData {
            k: k.clone(),
            n: n.to_vec(),
            mult_sigma_plus,
            mult_rho,
            d_sigma_plus,
            d_rho,
        })
    }
}

/// Primitive rays `v_j = (k e_j + N_j e_z)/k_j` of `ρ`.
fn rho_rays(k: &BigInt, n: &[BigInt]) -> Result<Vec<Vec<i64>>> {
    let q = n.len();
    let small = |x: &BigInt| {
        x.to_i64()
            .filter(|v| v.unsigned_abs() < 1 << 20)
            .ok_or_else(|| Error::EnumerationBound(format!("entry {x} too large to enumerate")))
    };
    let mut rays = Vec::with_capacity(q);
    for (j, nj) in n.iter().enumerate() {
        let kj = k.gcd(nj);
        let mut v = vec![0i64; q + 1];
        v[j] = small(&(k / &kj))?;
        v[q] = small(&(nj / &kj))?;
        rays.push(v);
    }
    Ok(rays)
}

/// Integer points `∑ λ_i a_i` with every `λ_i ∈ (0, 1]`, for linearly
/// independent nonnegative rays `a_i`, by scanning the box `[0, ∑ a_i]`.
/// Coordinates are solved with the integer adjugate of a nonsingular
/// maximal minor; remaining coordinates are checked for consistency.
pub fn fundamental_points(rays: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let d = rays.len();
    let dim = rays[0].len();
    let rows = independent_rows(rays)?;
    let sub: Vec<Vec<i128>> = rows
        .iter()
        .map(|&r| rays.iter().map(|a| a[r] as i128).collect())
        .collect();
    let (det, adj) = det_adj(&sub);
    let (det, adj) = if det < 0 {
        (-det, adj.into_iter().map(|row| row.into_iter().map(|x| -x).collect()).collect())
    } else {
        (det, adj)
    };
    let hi: Vec<i64> = (0..dim).map(|c| rays.iter().map(|a| a[c]).sum()).collect();
    let size: u128 = hi.iter().map(|&h| h as u128 + 1).product();
    if size > MAX_BOX {
        return Err(Error::EnumerationBound(format!("box of {size} points")));
    }
    let others: Vec<usize> = (0..dim).filter(|c| !rows.contains(c)).collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; dim];
    let mut lam = vec![0i128; d];
    loop {
        // λ·det = adj · x_rows
        let mut ok = true;
        for (i, l) in lam.iter_mut().enumerate() {
            *l = rows
                .iter()
                .enumerate()
                .map(|(j, &r)| adj[i][j] * x[r] as i128)
                .sum();
            if *l <= 0 || *l > det {
                ok = false;
                break;
            }
        }
        if ok {
            ok = others.iter().all(|&c| {
                let v: i128 = rays.iter().zip(&lam).map(|(a, l)| a[c] as i128 * l).sum();
                v == det * x[c] as i128
            });
        }
        if ok {
            out.push(x.clone());
        }
        // odometer
        let mut c = 0;
        loop {
            if c == dim {
                return Ok(out);
            }
            if x[c] < hi[c] {
                x[c] += 1;
                break;
            }
            x[c] = 0;
            c += 1;
        }
    }
}

fn independent_rows(rays: &[Vec<i64>]) -> Result<Vec<usize>> {
    let d = rays.len();
    let dim = rays[0].len();
    // greedy row selection by rank growth over ℚ (fraction-free)
    let mut chosen: Vec<usize> = Vec::new();
    for r in 0..dim {
        let mut trial = chosen.clone();
        trial.push(r);
        let m: Vec<Vec<i128>> = trial
            .iter()
            .map(|&rr| rays.iter().map(|a| a[rr] as i128).collect())
            .collect();
        if rank(&m) == trial.len() {
            chosen = trial;
            if chosen.len() == d {
                return Ok(chosen);
            }
        }
    }
    Err(Error::Internal("cone rays are linearly dependent".into()))
}

fn rank(m: &[Vec<i128>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let (f, g) = (a[i][c], a[r][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * g - a[r][j] * f;
                }
                let cont = a[i].iter().fold(0i128, |acc, &x| acc.gcd(&x));
                if cont > 1 {
                    a[i].iter_mut().for_each(|x| *x /= cont);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // Bareiss fraction-free elimination
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Determinant and adjugate (so that `adj · m = det · I`).
fn det_adj(m: &[Vec<i128>]) -> (i128, Vec<Vec<i128>>) {
    let n = m.len();
    let dt = det(m);
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det(&minor);
        }
    }
    (dt, adj)
}

pub fn cone_multiplicities(g: &BinomialGerm) -> Result<ConeData> {
    ConeData::new(&g.k, &g.n)
}

/// `𝓝(σ⁺) = gcd(n_q, m)`, `𝓝(σ⁻) = m + k`, `𝓝(ρ) = 𝓝(ρ*) = (m + k) n_q / e_q`.
pub fn n_bullet(g: &BinomialGerm, bullet: Bullet) -> BigInt {
    match bullet {
        Bullet::SigmaPlus => g.n_q.gcd(&g.m),
        Bullet::SigmaMinus => &g.m + &g.k,
        Bullet::Rho | Bullet::RhoStar => (&g.m + &g.k) * &g.n_q / &g.e_q,
    }
}

/// `∏_j 1/(N_j r + ν_j)` with `r = ((m + k)s + ν_z)/k`, as `k^q / ∏(…)`.
fn prod_h(g: &BinomialGerm) -> RatFun {
    let mk = &g.m + &g.k;
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (nj, nuj) in g.n.iter().zip(&g.nu) {
        num = num.scale(&g.k);
        den = &den * &Poly::linear(nj * &g.nu_z + &g.k * nuj, nj * &mk);
    }
    RatFun::new(num, den).expect("nonzero denominator")
}

/// Topological terms `W^•_top(s)`.
pub fn w_top(g: &BinomialGerm, bullet: Bullet) -> RatFun {
    let h = prod_h(g);
    let e2 = &g.e_q * &g.e_q;
    match bullet {
        Bullet::SigmaPlus => &RatFun::recip_linear(g.m.clone(), g.nu_z.clone()) * &h,
        Bullet::SigmaMinus => {
            // (1/(k r)) (1/∏ν_j − ∏ 1/(N_j r + ν_j)), k r = (m + k)s + ν_z
            let kr = RatFun::recip_linear(&g.m + &g.k, g.nu_z.clone());
            let inv_nu = RatFun::new(Poly::one(), Poly::constant(g.nu.iter().product::<BigInt>()))
                .expect("positive");
            &kr * &(&inv_nu - &h)
        }
        Bullet::Rho => {
            let c = RatFun::new(Poly::constant(-e2), Poly::constant(g.k.clone())).expect("k > 0");
            &c * &h
        }
        Bullet::RhoStar => {
            let c = RatFun::new(Poly::constant(e2), Poly::linear(g.k.clone(), g.k.clone()))
                .expect("k > 0");
            &c * &h
        }
    }
}

/// Twisted terms: `W^•` when `l | 𝓝(•)`, else 0; `ρ*` never contributes.
pub fn w_top_twisted(g: &BinomialGerm, bullet: Bullet, l: &BigInt) -> RatFun {
    assert!(l.is_positive(), "l must be positive");
    if l.is_one() {
        return w_top(g, bullet);
    }
    if bullet == Bullet::RhoStar || !n_bullet(g, bullet).is_multiple_of(l) {
        return RatFun::zero();
    }
    w_top(g, bullet)
}

/// Laurent polynomial in `𝕃`: `∑ c_i 𝕃^(lo + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentL {
    pub lo: i64,
    pub coeffs: Vec<BigInt>,
}

impl LaurentL {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentL {
            lo: 0,
            coeffs: vec![c.into()],
        }
    }

    /// `𝕃 − 1`.
    pub fn l_minus_one() -> Self {
        LaurentL {
            lo: 0,
            coeffs: vec![BigInt::from(-1), BigInt::one()],
        }
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        LaurentL {
            lo: e,
            coeffs: vec![c.into()],
        }
    }

    pub fn mul(&self, o: &LaurentL) -> LaurentL {
        let mut c = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LaurentL {
            lo: self.lo + o.lo,
            coeffs: c,
        }
    }

    pub fn pow(&self, e: usize) -> LaurentL {
        (0..e).fold(LaurentL::constant(1), |acc, _| acc.mul(self))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Order of vanishing at `𝕃 = 1` and the value of `unit/(𝕃 − 1)^p` there.
    pub fn split_at_one(&self) -> (usize, BigInt) {
        assert!(!self.is_zero(), "zero unit");
        // work with the polynomial 𝕃^(-lo)·self; the monomial is 1 at 𝕃 = 1
        let mut c = self.coeffs.clone();
        let mut p = 0;
        loop {
            let v: BigInt = c.iter().sum();
            if !v.is_zero() {
                return (p, v);
            }
            // synthetic division by (𝕃 − 1)
            let mut q = vec![BigInt::zero(); c.len() - 1];
            let mut acc = BigInt::zero();
            for i in (1..c.len()).rev() {
                acc += &c[i];
                q[i - 1] = acc.clone();
            }
            c = q;
            p += 1;
        }
    }
}

/// `𝕃^(−a) T^b / (1 − 𝕃^(−a) T^b)` when `numerator`, else `1/(1 − 𝕃^(−a) T^b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub a: BigInt,
    pub b: BigInt,
    pub numerator: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotTerm {
    pub unit: LaurentL,
    /// Cardinality of the fundamental domain standing in for `P_C`.
    pub card: BigInt,
    pub atoms: Vec<Atom>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MotExpr {
    pub terms: Vec<MotTerm>,
}

pub fn motivic_w(g: &BinomialGerm, bullet: Bullet) -> Result<MotExpr> {
    let cones = cone_multiplicities(g)?;
    Ok(motivic_w_with(g, &cones, bullet))
}

/// [`motivic_w`] with precomputed cone data for `(g.k, g.N)`.
pub fn motivic_w_with(g: &BinomialGerm, cones: &ConeData, bullet: Bullet) -> MotExpr {
    debug_assert!(cones.k == g.k && cones.n == g.n);
    let q = g.q();
    let mk = &g.m + &g.k;
    let lm1 = LaurentL::l_minus_one();
    // ray atoms of ρ (shared by H and H̃)
    let h_atoms: Vec<Atom> = g
        .n
        .iter()
        .zip(&g.nu)
        .zip(&g.k_j)
        .map(|((nj, nuj), kj)| Atom {
            a: (&g.k * nuj + nj * &g.nu_z) / kj,
            b: &mk * nj / kj,
            numerator: false,
        })
        .collect();
    let k_atom = Atom {
        a: g.nu_z.clone(),
        b: g.m.clone(),
        numerator: false,
    };
    let k_tilde = |numerator| Atom {
        a: g.nu_z.clone(),
        b: mk.clone(),
        numerator,
    };
    let with = |mut atoms: Vec<Atom>, extra: Atom| {
        atoms.push(extra);
        atoms
    };
    let terms = match bullet {
        Bullet::SigmaPlus => vec![MotTerm {
            unit: lm1.pow(q + 1),
            card: cones.mult_sigma_plus.clone(),
            atoms: with(h_atoms, k_atom),
        }],
        Bullet::SigmaMinus => {
            let orthant: Vec<Atom> = g
                .nu
                .iter()
                .map(|nuj| Atom {
                    a: nuj.clone(),
                    b: BigInt::zero(),
                    numerator: true,
                })
                .chain(std::iter::once(k_tilde(true)))
                .collect();
            vec![
                MotTerm {
                    unit: lm1.pow(q + 1),
                    card: BigInt::one(),
                    atoms: orthant,
                },
                MotTerm {
                    unit: lm1.pow(q + 1).mul(&LaurentL::constant(-1)),
                    card: cones.mult_sigma_plus.clone(),
                    atoms: with(h_atoms.clone(), k_tilde(false)),
                },
                MotTerm {
                    unit: lm1.pow(q + 1).mul(&LaurentL::constant(-1)),
                    card: cones.mult_rho.clone(),
                    atoms: h_atoms,
                },
            ]
        }
        Bullet::Rho => {
            // (𝕃 − 1 − e_q)·(𝕃 − 1)^q
            let lead = LaurentL {
                lo: 0,
                coeffs: vec![-BigInt::one() - &g.e_q, BigInt::one()],
            };
            vec![MotTerm {
                unit: lead.mul(&lm1.pow(q)),
                card: cones.mult_rho.clone(),
                atoms: h_atoms,
            }]
        }
        Bullet::RhoStar => vec![MotTerm {
            unit: LaurentL::monomial(g.e_q.clone(), -1).mul(&lm1.pow(q + 1)),
            card: cones.mult_rho.clone(),
            atoms: with(
                h_atoms,
                Atom {
                    a: BigInt::one(),
                    b: BigInt::one(),
                    numerator: true,
                },
            ),
        }],
    };
    MotExpr { terms }
}

/// Euler characteristic specialization at `T = 𝕃^(−s)`: each `(𝕃 − 1)`
/// paired with an atom gives `1/(a + b s)`, surplus `(𝕃 − 1)` kills the
/// term, and a deficit is a structural error.
pub fn euler_specialize(e: &MotExpr) -> Result<RatFun> {
    let mut total = RatFun::zero();
    for t in &e.terms {
        let (p, v) = t.unit.split_at_one();
        let na = t.atoms.len();
        if p > na {
            continue;
        }
        if p < na {
            return Err(Error::Internal(format!(
                "term has {na} atoms but only {p} factors of (L - 1)"
            )));
        }
        let mut den = Poly::one();
        for a in &t.atoms {
            if a.a.is_zero() && a.b.is_zero() {
                return Err(Error::Internal("atom with (a, b) = (0, 0)".into()));
            }
            den = &den * &Poly::linear(a.a.clone(), a.b.clone());
        }
        let term = RatFun::new(Poly::constant(v * &t.card), den).expect("nonzero");
        total = &total + &term;
    }
    Ok(total)
}

/// Parameter ranges of the motivic-vs-topological oracle grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBounds {
    pub q_max: usize,
    pub m_max: i64,
    pub k_max: i64,
    pub n_max: i64,
    pub nu_max: i64,
    pub nu_z_max: i64,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds {
            q_max: 3,
            m_max: 4,
            k_max: 6,
            n_max: 6,
            nu_max: 3,
            nu_z_max: 4,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    /// Germs visited.
    pub germs: u64,
    /// Germ × bullet comparisons.
    pub comparisons: u64,
    pub mismatches: Vec<String>,
}

fn tuples(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks `euler_specialize(motivic_w) = w_top` for every bullet on the
/// full grid. Work is split by `(q, k, N)`, which fixes the cone data.
pub fn oracle_grid(exec: Exec, bounds: &GridBounds) -> Result<GridReport> {
    let mut keys: Vec<(i64, Vec<i64>)> = Vec::new();
    for q in 1..=bounds.q_max {
        for k in 1..=bounds.k_max {
            for n in tuples(q, bounds.n_max) {
                keys.push((k, n));
            }
        }
    }
    let parts = exec.try_map(&keys, |(k, n)| grid_block(*k, n, bounds))?;
    let mut report = GridReport::default();
    for p in parts {
        report.germs += p.germs;
        report.comparisons += p.comparisons;
        report.mismatches.extend(p.mismatches);
    }
    Ok(report)
}

fn grid_block(k: i64, n: &[i64], bounds: &GridBounds) -> Result<GridReport> {
    let kb = BigInt::from(k);
    let nb: Vec<BigInt> = n.iter().map(|&x| x.into()).collect();
    let cones = ConeData::new(&kb, &nb)?;
    let mut report = GridReport::default();
    for nu in tuples(n.len(), bounds.nu_max) {
        for m in 0..=bounds.m_max {
            for nu_z in 1..=bounds.nu_z_max {
                let g = BinomialGerm::small(m, k, n, &nu, nu_z)?;
                report.germs += 1;
                for b in Bullet::ALL {
                    report.comparisons += 1;
                    let lhs = euler_specialize(&motivic_w_with(&g, &cones, b))?;
                    if lhs != w_top(&g, b) {
                        report
                            .mismatches
                            .push(format!("m={m} k={k} N={n:?} nu={nu:?} nu_z={nu_z} {b}"));
                    }
                }
            }
        }
    }
    Ok(report)
}
