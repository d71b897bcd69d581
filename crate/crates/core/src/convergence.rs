//! Numerical side of the star product on the cone: sphere norms, the
//! operator constant, truncated entire inputs and certified partial sums.
//!
//! Series are evaluated in the chart `s1 = u^2`, `s2 = v^2`, `s3 = u v`,
//! where the Darboux fields become `A = d/du` and `B = d/dv`, so that
//!
//! ```text
//! Q_k(f, g) / k! = sum_j (-1)^j (k-j)! j! F_{k-j, j} G_{j, k-j}
//! ```
//!
//! with `F_{ab}` the Taylor coefficients of `f(u^2, v^2, u v)` at the point.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::{exp_to_f64, rat_int, rational_to_f64, Exp, Gen, LaurentPoly, PresentedAlgebra, Rational};
use crate::derivation::{PoissonStructure, Side};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::models::{cone, ModelDescriptor};
use crate::moyal::factorial;
use crate::report::{Check, CheckList};

pub const DEFAULT_SAMPLES: usize = 10_000;
pub const RATIO_TOL: f64 = 1e-9;
pub const TAIL_TOL: f64 = 1e-6;
pub const DEFAULT_K: usize = 24;
pub const DEFAULT_M: usize = 24;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NormEstimate {
    /// `sum |coefficients|`, an upper bound for the sup over the unit sphere.
    pub coeff_sum: f64,
    /// Largest `|p|` seen on random points of the complex unit sphere.
    pub sample_max: f64,
    pub sample_count: usize,
    pub seed: u64,
}

/// Numeric magnitude of the coefficient of one monomial, with the surd
/// generator `r` (if present) replaced by `sqrt(2)`.
fn surd_factor(alg: &PresentedAlgebra, m: &crate::algebra::Monomial) -> f64 {
    match alg.gen("r") {
        Ok(r) => 2f64.powf(exp_to_f64(m.exponent(r)) / 2.0),
        Err(_) => 1.0,
    }
}

/// Bracketed sphere norm of `p`.
pub fn coeff_norm(p: &LaurentPoly, alg: &PresentedAlgebra, seed: u64, samples: usize) -> NormEstimate {
    let coeff_sum = p
        .terms()
        .map(|(m, c)| rational_to_f64(c).abs() * surd_factor(alg, m))
        .sum();
    let r = alg.gen("r").ok();
    let vars: Vec<Gen> = (0..alg.num_generators() as Gen).filter(|g| Some(*g) != r).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_max: f64 = 0.0;
    let terms: Vec<(Vec<(usize, f64)>, f64)> = p
        .terms()
        .map(|(m, c)| {
            let mut pows = Vec::new();
            let k = rational_to_f64(c) * surd_factor(alg, m);
            for (g, e) in m.iter() {
                if Some(g) == r {
                    continue;
                }
                let idx = vars.iter().position(|v| *v == g).expect("generator in range");
                pows.push((idx, exp_to_f64(e)));
            }
            (pows, k)
        })
        .collect();
    if !p.is_zero() && !vars.is_empty() {
        for _ in 0..samples {
            let mut z: Vec<Complex64> = (0..vars.len())
                .map(|_| Complex64::new(gauss(&mut rng), gauss(&mut rng)))
                .collect();
            let norm = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            z.iter_mut().for_each(|c| *c /= norm);
            let mut acc = Complex64::new(0.0, 0.0);
            for (pows, k) in &terms {
                let mut t = Complex64::new(*k, 0.0);
                for &(i, e) in pows {
                    t *= if e.fract() == 0.0 { z[i].powi(e as i32) } else { z[i].powf(e) };
                }
                acc += t;
            }
            sample_max = sample_max.max(acc.norm());
        }
    }
    NormEstimate {
        coeff_sum,
        sample_max,
        sample_count: if p.is_zero() { 0 } else { samples },
        seed,
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// `sum |table coefficients|` over the independent entries of a structure.
pub fn structure_norm(q: &PoissonStructure) -> Rational {
    q.entries().fold(rat_int(0), |acc, (_, p)| acc + p.coeff_abs_sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorNorm {
    pub name: String,
    pub operator: String,
    /// Coefficient sum over the second-order part `sum p_ijk s_i d_j d_k`.
    pub second_order_norm: String,
    /// Coefficient sum over every term, first-order part included.
    pub full_norm: String,
}

/// Composes `A = q(., sqrt(s2))` and `B = q(sqrt(s1), .)` on the cone and
/// measures `A^2`, `B^2`, `AB`, `BA` and the bracket itself.
pub fn operator_constant_check() -> Result<(CheckList, Vec<OperatorNorm>)> {
    let m = cone::model()?;
    let alg = m.algebra.clone();
    let coords = [0 as Gen, 1, 2];
    let a = m.structure.hamiltonian_field(&m.parse("sqrt(s2)")?, Side::Left)?;
    let b = m.structure.hamiltonian_field(&m.parse("sqrt(s1)")?, Side::Right)?;
    let a_op = DiffOp::from_derivation(&a, &coords)?;
    let b_op = DiffOp::from_derivation(&b, &coords)?;
    let ops = [
        ("A^2", a_op.compose_field(&a, &alg)?),
        ("B^2", b_op.compose_field(&b, &alg)?),
        ("AB", b_op.compose_field(&a, &alg)?),
        ("BA", a_op.compose_field(&b, &alg)?),
    ];
    let mut out = CheckList::default();
    let mut norms = Vec::new();
    let mut max2 = rat_int(0);
    let fmt = crate::algebra::format_rational;
    for (name, op) in &ops {
        let second = op.order_part(2).coeff_abs_sum();
        let full = op.coeff_abs_sum();
        if second > max2 {
            max2 = second.clone();
        }
        norms.push(OperatorNorm {
            name: name.to_string(),
            operator: op.format(&alg),
            second_order_norm: fmt(&second),
            full_norm: fmt(&full),
        });
    }
    let qn = structure_norm(&m.structure);
    norms.push(OperatorNorm {
        name: "q".into(),
        operator: "4*s3 d1^d2 + 2*s1 d1^d3 - 2*s2 d2^d3".into(),
        second_order_norm: fmt(&qn),
        full_norm: fmt(&qn),
    });
    if qn > max2 {
        max2 = qn.clone();
    }
    let ab = ops[2].1.order_part(2).coeff_abs_sum();
    out.push(Check::new(
        "convergence/operator-constant/AB",
        "||AB|| = 9",
        ab == rat_int(9),
        fmt(&ab),
    ));
    out.push(Check::new(
        "convergence/operator-constant/q",
        "||q|| = 8",
        qn == rat_int(8),
        fmt(&qn),
    ));
    out.push(Check::new(
        "convergence/operator-constant/max",
        "max(||AB||, ||A^2||, ||B^2||, ||q||) <= 9",
        max2 <= rat_int(9),
        fmt(&max2),
    ));
    out.push(Check::new(
        "convergence/operator-constant/commute",
        "AB = BA as operators",
        ops[2].1 == ops[3].1,
        format!("{} vs {}", ops[2].1.format(&alg), ops[3].1.format(&alg)),
    ));
    let printed = [
        ("A^2", "4*s1 d1^2 + 2 d1 + s2 d3^2"),
        ("B^2", "4*s2 d2^2 + 2 d2 + s1 d3"),
        ("AB", "4*s3 d1 d2 + 2*s1 d1 d3 + 2*s2 d2 d3 + s3 d3^2"),
    ];
    for ((name, text), n) in printed.iter().zip(&norms) {
        out.note(format!("{name}: composed {} ; printed {text}", n.operator));
    }
    Ok((out, norms))
}

/// Degree-`M` Taylor truncation of `exp(<lambda, s>)` in the cone generators,
/// without reduction modulo the relation.
pub fn truncate_entire(lambda: [Rational; 3], m: usize) -> LaurentPoly {
    let lin = LaurentPoly::from_terms(
        lambda
            .iter()
            .enumerate()
            .map(|(i, l)| (crate::algebra::Monomial::var(i as Gen), l.clone())),
    );
    let mut out = LaurentPoly::one();
    let mut power = LaurentPoly::one();
    for k in 1..=m {
        power = &power * &lin;
        let inv = Rational::new(1.into(), factorial(k as u32));
        out.add_scaled(&power, &inv);
    }
    out
}

/// Dense bivariate polynomial `sum c[a][b] u^a v^b`.
#[derive(Clone, Debug)]
struct Bivar {
    c: Vec<Vec<f64>>,
}

impl Bivar {
    /// Pulls back a cone polynomial along `s1 = u^2`, `s2 = v^2`, `s3 = u v`.
    fn from_cone(p: &LaurentPoly) -> Result<Bivar> {
        let mut entries = Vec::new();
        let mut da = 0;
        let mut db = 0;
        for (m, c) in p.terms() {
            let e = |g: Gen| m.exponent(g);
            let a = Exp::from(2) * e(0) + e(2);
            let b = Exp::from(2) * e(1) + e(2);
            if !a.is_integer() || !b.is_integer() || a < Exp::from(0) || b < Exp::from(0) {
                return Err(Error::InvalidInput(
                    "series inputs must be polynomial in sqrt(s1), sqrt(s2)".into(),
                ));
            }
            let (a, b) = (*a.numer() as usize, *b.numer() as usize);
            da = da.max(a);
            db = db.max(b);
            entries.push((a, b, rational_to_f64(c)));
        }
        let mut c = vec![vec![0.0; db + 1]; da + 1];
        for (a, b, v) in entries {
            c[a][b] += v;
        }
        Ok(Bivar { c })
    }

    fn deg_u(&self) -> usize {
        self.c.len() - 1
    }

    fn deg_v(&self) -> usize {
        self.c[0].len() - 1
    }

    /// Taylor coefficients at `(u0, v0)`.
    fn shift(&self, u0: f64, v0: f64) -> Bivar {
        let shift_1d = |row: &[f64], x0: f64| -> Vec<f64> {
            let n = row.len();
            let mut out = row.to_vec();
            for i in 0..n {
                for j in (i..n - 1).rev() {
                    out[j] += x0 * out[j + 1];
                }
            }
            out
        };
        let mut rows: Vec<Vec<f64>> = self.c.iter().map(|r| shift_1d(r, v0)).collect();
        let nu = rows.len();
        let nv = rows[0].len();
        for b in 0..nv {
            let col: Vec<f64> = (0..nu).map(|a| rows[a][b]).collect();
            let s = shift_1d(&col, u0);
            for a in 0..nu {
                rows[a][b] = s[a];
            }
        }
        Bivar { c: rows }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.c.get(a).and_then(|r| r.get(b)).copied().unwrap_or(0.0)
    }

    /// `sum |c_ab| x^a y^b` in log space.
    fn log_majorant(&self, x: f64, y: f64) -> f64 {
        let mut terms = Vec::new();
        for (a, row) in self.c.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if *v != 0.0 {
                    terms.push(v.abs().ln() + a as f64 * x.ln() + b as f64 * y.ln());
                }
            }
        }
        log_sum_exp(&terms)
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Inconclusive,
    Growing,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Converged => "converged",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Growing => "growing",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesResult {
    pub s_norm: f64,
    pub t: f64,
    pub order: usize,
    /// Partial sums `S_0..S_K`.
    pub partial_sums: Vec<f64>,
    pub value: f64,
    /// `|t^K c_K|`
    pub last_term: f64,
    /// `(|T_K| + |T_{K-1}|) / (|T_{K-1}| + |T_{K-2}|)`
    pub ratio: f64,
    pub tail_bound: f64,
    pub verdict: Verdict,
}

/// A point of the cone with positive real coordinates, given by `|s|`
/// (euclidean norm) along the ray `s1 = s2 = s3`.
pub fn ray_point(s_norm: f64) -> [f64; 3] {
    let c = s_norm / 3f64.sqrt();
    [c, c, c]
}

/// Star-product series `sum t^k Q_k(f, g)(s) / k!` at a point of the cone.
///
/// `trunc` is `Some((eps, M))` when `f` and `g` are degree-`M` truncations of
/// entire functions of type `eps`; it adds `eps^(M+1) |s|^(M+1) / (M+1)!` per
/// factor to the tail certificate.
pub fn series_sum(
    f: &LaurentPoly,
    g: &LaurentPoly,
    s: [f64; 3],
    t: f64,
    order: usize,
    trunc: Option<(f64, usize)>,
) -> Result<SeriesResult> {
    let s_norm = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    if s_norm == 0.0 {
        return Err(Error::InvalidInput("the point s = 0 is excluded".into()));
    }
    if s[0] <= 0.0 || s[1] <= 0.0 || (s[2] * s[2] - s[0] * s[1]).abs() > 1e-12 * s_norm * s_norm {
        return Err(Error::InvalidInput(
            "point must satisfy s3^2 = s1 s2 with s1, s2 > 0".into(),
        ));
    }
    let u0 = s[0].sqrt();
    let v0 = s[2] / u0;
    let fb = Bivar::from_cone(f)?;
    let gb = Bivar::from_cone(g)?;
    let ft = fb.shift(u0, v0);
    let gt = gb.shift(u0, v0);
    let mut terms = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = 0.0;
        for j in 0..=k {
            let fa = ft.get(k - j, j);
            let ga = gt.get(j, k - j);
            if fa == 0.0 || ga == 0.0 {
                continue;
            }
            let w = (ln_factorial(k - j) + ln_factorial(j)).exp();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            c += sign * w * fa * ga;
        }
        terms.push(c * t.powi(k as i32));
    }
    let mut partial_sums = Vec::with_capacity(order + 1);
    let mut acc = 0.0;
    for x in &terms {
        acc += x;
        partial_sums.push(acc);
    }
    let last_term = terms[order].abs();
    let ratio = if order >= 2 {
        let num = terms[order].abs() + terms[order - 1].abs();
        let den = terms[order - 1].abs() + terms[order - 2].abs();
        if den == 0.0 {
            if num == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            num / den
        }
    } else {
        0.0
    };
    let mut tail = cauchy_tail(&fb, &gb, u0.abs(), v0.abs(), t.abs(), order);
    if let Some((eps, m)) = trunc {
        let one = (eps * s_norm).powi(m as i32 + 1) / (ln_factorial(m + 1)).exp();
        tail += 2.0 * one;
    }
    let verdict = if tail < TAIL_TOL && ratio < 1.0 - RATIO_TOL {
        Verdict::Converged
    } else if ratio > 1.0 + RATIO_TOL {
        Verdict::Growing
    } else {
        Verdict::Inconclusive
    };
    Ok(SeriesResult {
        s_norm,
        t,
        order,
        value: acc,
        partial_sums,
        last_term,
        ratio,
        tail_bound: tail,
        verdict,
    })
}

/// `sum_{k > K} |t|^k |c_k|` bounded by Cauchy estimates on polydiscs of
/// radius `R` around the point: `|F_ab| <= M_F(R) / R^(a+b)` with `M_F` the
/// absolute-coefficient majorant at `(|u0| + R, |v0| + R)`. Then
/// `|c_k| <= sum_j (k-j)! j! M_F M_G / R^(2k)`, minimized over a grid of `R`
/// for each `k`. The inputs are polynomial, so the sum is finite.
fn cauchy_tail(fb: &Bivar, gb: &Bivar, u0: f64, v0: f64, t: f64, order: usize) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let kmax = (fb.deg_u() + fb.deg_v()).min(gb.deg_u() + gb.deg_v());
    let radii: Vec<f64> = (0..200).map(|i| 0.05 * 1.04f64.powi(i)).collect();
    let logs: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| (r.ln(), fb.log_majorant(u0 + r, v0 + r) + gb.log_majorant(u0 + r, v0 + r)))
        .collect();
    let mut tail = 0.0;
    for k in (order + 1)..=kmax {
        let lw = log_sum_exp(&(0..=k).map(|j| ln_factorial(k - j) + ln_factorial(j)).collect::<Vec<_>>());
        let best = logs
            .iter()
            .map(|(lr, lm)| lm - 2.0 * k as f64 * lr)
            .fold(f64::INFINITY, f64::min);
        tail += (lw + best + k as f64 * t.ln()).exp();
    }
    tail
}

/// Grid `SMIN:SMAX:NS,TMIN:TMAX:NT`, inclusive, linearly spaced.
pub fn parse_grid(spec: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let bad = || Error::InvalidInput(format!("grid '{spec}' is not SMIN:SMAX:NS,TMIN:TMAX:NT"));
    let axis = |part: &str| -> Result<Vec<f64>> {
        let v: Vec<&str> = part.split(':').collect();
        if v.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = v[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = v[1].trim().parse().map_err(|_| bad())?;
        let n: usize = v[2].trim().parse().map_err(|_| bad())?;
        if n == 0 || hi < lo {
            return Err(bad());
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
    };
    let (s, t) = spec.split_once(',').ok_or_else(bad)?;
    Ok((axis(s)?, axis(t)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub s_norm: f64,
    pub t: f64,
    pub order: usize,
    pub value: f64,
    pub last_term: f64,
    pub ratio: f64,
    pub tail_bound: f64,
    pub verdict: Verdict,
    /// Strictly inside `|s| < 1/(4 sigma)`, `|t| < 1/(9 sqrt(sigma))`.
    pub inside_ball: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub sigma: f64,
    pub truncation: usize,
    pub order: usize,
    pub lambda_f: [f64; 3],
    pub lambda_g: [f64; 3],
    pub points: Vec<GridPoint>,
}

impl ConvergenceReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "sigma = {}  M = {}  K = {}  lambda_f = {:?}  lambda_g = {:?}",
            self.sigma, self.truncation, self.order, self.lambda_f, self.lambda_g
        );
        let _ = writeln!(
            s,
            "{:>8} {:>8} {:>4} {:>14} {:>11} {:>9} {:>11} {:>6}  verdict",
            "|s|", "t", "K", "sum", "last", "ratio", "tail", "ball"
        );
        for p in &self.points {
            let _ = writeln!(
                s,
                "{:>8.4} {:>8.4} {:>4} {:>14.8e} {:>11.3e} {:>9.4} {:>11.3e} {:>6}  {}",
                p.s_norm,
                p.t,
                p.order,
                p.value,
                p.last_term,
                p.ratio,
                p.tail_bound,
                if p.inside_ball { "in" } else { "out" },
                p.verdict
            );
        }
        s
    }

    /// Inside-ball points that did not converge.
    pub fn inside_failures(&self) -> Vec<&GridPoint> {
        self.points
            .iter()
            .filter(|p| p.inside_ball && p.verdict != Verdict::Converged)
            .collect()
    }

    /// A growing verdict never sits at or below a converged point in both
    /// coordinates.
    pub fn monotone(&self) -> bool {
        self.points.iter().all(|c| {
            c.verdict != Verdict::Converged
                || !self.points.iter().any(|p| {
                    p.verdict == Verdict::Growing && p.s_norm <= c.s_norm && p.t.abs() <= c.t.abs()
                })
        })
    }
}

/// Exponent vectors of the two inputs; each has `sum |lambda_i| = sigma`.
pub fn default_lambdas(sigma: f64) -> ([Rational; 3], [Rational; 3]) {
    let s = Rational::from_float(sigma).expect("finite sigma");
    let r = |d: i64| &s / rat_int(d);
    ([r(3), r(3), r(3)], [r(2), r(6), r(3)])
}

pub fn radius_scan(sigma: f64, grid: &str, order: usize, truncation: usize) -> Result<ConvergenceReport> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput("sigma must be positive".into()));
    }
    let (ss, ts) = parse_grid(grid)?;
    let (lf, lg) = default_lambdas(sigma);
    let f = truncate_entire(lf.clone(), truncation);
    let g = truncate_entire(lg.clone(), truncation);
    let mut points = Vec::new();
    for &s in &ss {
        for &t in &ts {
            let r = series_sum(&f, &g, ray_point(s), t, order, Some((sigma, truncation)))?;
            points.push(GridPoint {
                s_norm: r.s_norm,
                t,
                order,
                value: r.value,
                last_term: r.last_term,
                ratio: r.ratio,
                tail_bound: r.tail_bound,
                verdict: r.verdict,
                inside_ball: s < 1.0 / (4.0 * sigma) && t.abs() < 1.0 / (9.0 * sigma.sqrt()),
            });
        }
    }
    let to_f = |l: &[Rational; 3]| [rational_to_f64(&l[0]), rational_to_f64(&l[1]), rational_to_f64(&l[2])];
    Ok(ConvergenceReport {
        sigma,
        truncation,
        order,
        lambda_f: to_f(&lf),
        lambda_g: to_f(&lg),
        points,
    })
}

/// `||a_m|| <= sigma^m / m!` for the homogeneous parts of a truncated exponential.
pub fn growth_check(lambda: [Rational; 3], m: usize) -> CheckList {
    let sigma: Rational = lambda.iter().fold(rat_int(0), |acc, l| acc + l.abs());
    let p = truncate_entire(lambda, m);
    let mut out = CheckList::default();
    for k in 0..=m {
        let part = p.homogeneous_part(Exp::from(k as i64));
        let norm = part.coeff_abs_sum();
        let bound = crate::algebra::rational_pow(&sigma, Exp::from(k as i64)).expect("integer power")
            / Rational::from_integer(factorial(k as u32));
        out.push(Check::new(
            format!("convergence/growth/m{k}"),
            format!("||a_{k}|| <= sigma^{k}/{k}!"),
            norm <= bound,
            format!("{} > {}", rational_to_f64(&norm), rational_to_f64(&bound)),
        ));
    }
    out
}

/// Star coefficients of the cone model evaluated numerically; used to tie
/// the chart formula to the exact engine.
pub fn exact_coefficients_at(
    model: &ModelDescriptor,
    f: &LaurentPoly,
    g: &LaurentPoly,
    s: [f64; 3],
    order: usize,
) -> Result<Vec<f64>> {
    let q = crate::moyal::MoyalQuantizer::new(model.darboux()?.clone());
    let st = q.star(order, f, g)?;
    Ok(st
        .coefficients
        .iter()
        .map(|c| c.eval_f64(|gen| s[gen as usize]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_zero_and_unit_monomial() {
        let a = cone::algebra();
        assert_eq!(coeff_norm(&LaurentPoly::zero(), &a, 1, 100).coeff_sum, 0.0);
        let n = coeff_norm(&a.var("s1"), &a, 1, 2000);
        assert_eq!(n.coeff_sum, 1.0);
        assert!(n.sample_max <= 1.0 + 1e-12 && n.sample_max > 0.5);
    }

    #[test]
    fn truncation_small_cases() {
        let a = cone::algebra();
        assert_eq!(truncate_entire([rat_int(0), rat_int(0), rat_int(0)], 5), LaurentPoly::one());
        let p = truncate_entire([rat_int(1), rat_int(0), rat_int(0)], 1);
        assert_eq!(a.format(&p), "s1 + 1");
    }

    #[test]
    fn t_zero_gives_product() {
        let f = truncate_entire([rat_int(1), rat_int(0), rat_int(1)], 6);
        let g = truncate_entire([rat_int(0), rat_int(1), rat_int(0)], 6);
        let s = ray_point(0.3);
        let r = series_sum(&f, &g, s, 0.0, 6, None).unwrap();
        let ev = |p: &LaurentPoly| p.eval_f64(|i| s[i as usize]);
        assert!((r.value - ev(&f) * ev(&g)).abs() < 1e-12);
    }

    #[test]
    fn origin_rejected() {
        let f = LaurentPoly::one();
        assert!(series_sum(&f, &f, [0.0, 0.0, 0.0], 0.1, 4, None).is_err());
    }

    #[test]
    fn grid_parsing() {
        let (s, t) = parse_grid("0.05:0.2:4,0:0.1:3").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(t, vec![0.0, 0.05, 0.1]);
        assert!(parse_grid("0.1:0.2").is_err());
    }
}
