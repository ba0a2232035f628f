//! Independent reference computations shared by the integration and acceptance tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Low-order normalized constraint polynomials `K_n(g, Δ)` written out term by term, ω = 1.
pub fn table_k(n: usize, g: f64, d: f64) -> f64 {
    let g2 = g * g;
    let d2 = d * d;
    match n {
        0 => 1.0,
        1 => 1.0 - 4.0 * g2 - d2 / 4.0,
        2 => 1.0 - 8.0 * g2 + 8.0 * g2 * g2 - 5.0 * d2 / 16.0 + 3.0 * d2 * g2 / 4.0 + d2 * d2 / 64.0,
        3 => {
            1.0 - 12.0 * g2 + 24.0 * g2 * g2 - 32.0 * g2.powi(3) / 3.0 - 49.0 * d2 / 144.0
                + 29.0 * g2 * d2 / 18.0
                - 11.0 * g2 * g2 * d2 / 9.0
                + 7.0 * d2 * d2 / 288.0
                - g2 * d2 * d2 / 24.0
                - d2.powi(3) / 2304.0
        }
        _ => panic!("no closed form for n = {n}"),
    }
}

/// Laguerre polynomials `L_n(4g²)` written out term by term.
pub fn table_l(n: usize, g: f64) -> f64 {
    let g2 = g * g;
    match n {
        0 => 1.0,
        1 => 1.0 - 4.0 * g2,
        2 => 1.0 - 8.0 * g2 + 8.0 * g2 * g2,
        3 => 1.0 - 12.0 * g2 + 24.0 * g2 * g2 - 32.0 * g2.powi(3) / 3.0,
        _ => panic!("no closed form for n = {n}"),
    }
}

/// Truncated `a† − a` on `dim` Fock states.
fn displacement_generator(dim: usize) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(dim, dim);
    for m in 0..dim - 1 {
        let s = ((m + 1) as f64).sqrt();
        x[(m + 1, m)] = s;
        x[(m, m + 1)] = -s;
    }
    x
}

/// `D(β) = exp[−β (a† − a)]` by dense matrix exponential on a truncated space.
pub fn displacement_matrix(beta: f64, dim: usize) -> DMatrix<f64> {
    (displacement_generator(dim) * (-beta)).exp()
}

/// Matrix of `⟨m_−|n_+⟩ = ⟨m| D(−α)† D(α) |n⟩` by brute force.
pub fn brute_overlap_matrix(alpha: f64, dim: usize) -> DMatrix<f64> {
    let plus = displacement_matrix(alpha, dim);
    let minus = displacement_matrix(-alpha, dim);
    minus.transpose() * plus
}

/// Full Rabi Hamiltonian on spin ⊗ `dim` Fock states; index `s * dim + m`, s = 0 is σz = +1.
pub fn full_hamiltonian(delta: f64, omega: f64, g: f64, dim: usize) -> DMatrix<f64> {
    let size = 2 * dim;
    let mut h = DMatrix::zeros(size, size);
    for m in 0..dim {
        h[(m, m)] = 0.5 * delta + omega * m as f64;
        h[(dim + m, dim + m)] = -0.5 * delta + omega * m as f64;
    }
    for m in 0..dim - 1 {
        let c = g * ((m + 1) as f64).sqrt();
        // σx flips the spin; (a + a†) links m and m + 1.
        for (s, t) in [(0, dim), (dim, 0)] {
            h[(s + m, t + m + 1)] = c;
            h[(s + m + 1, t + m)] = c;
        }
    }
    h
}

/// AA eigenvector `Ψ_{n,±} = (|n_+,+x⟩ ± |n_−,−x⟩)/√2` in the spin ⊗ Fock basis.
fn aa_state(n: usize, plus: bool, d_plus: &DMatrix<f64>, d_minus: &DMatrix<f64>, dim: usize) -> DVector<f64> {
    let fock_plus = d_plus.column(n).into_owned();
    let fock_minus = d_minus.column(n).into_owned();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if plus { 1.0 } else { -1.0 };
    let mut v = DVector::zeros(2 * dim);
    for m in 0..dim {
        // |+x⟩ = (|↑⟩ + |↓⟩)/√2, |−x⟩ = (|↑⟩ − |↓⟩)/√2.
        v[m] = r * r * (fock_plus[m] + sign * fock_minus[m]);
        v[dim + m] = r * r * (fock_plus[m] - sign * fock_minus[m]);
    }
    v
}

/// GRWA by brute force: project the full Hamiltonian on the AA eigenbasis
/// `{Ψ_{0,−}} ∪ {Ψ_{n,+}, Ψ_{n+1,−}}_{n < n_max}`, keep only the diagonal and
/// the `Ψ_{n,+} ↔ Ψ_{n+1,−}` couplings, and diagonalize.
pub fn grwa_oracle(delta: f64, omega: f64, g: f64, n_max: usize, dim: usize) -> Vec<f64> {
    let alpha = g / omega;
    let h = full_hamiltonian(delta, omega, g, dim);
    let d_plus = displacement_matrix(alpha, dim);
    let d_minus = displacement_matrix(-alpha, dim);

    let mut basis = vec![aa_state(0, false, &d_plus, &d_minus, dim)];
    for n in 0..n_max {
        basis.push(aa_state(n, true, &d_plus, &d_minus, dim));
        basis.push(aa_state(n + 1, false, &d_plus, &d_minus, dim));
    }
    let size = basis.len();
    let mut reduced = DMatrix::zeros(size, size);
    for i in 0..size {
        let hv = &h * &basis[i];
        for j in 0..size {
            let retained = i == j || (i >= 1 && j >= 1 && (i - 1) / 2 == (j - 1) / 2);
            if retained {
                reduced[(i, j)] = basis[j].dot(&hv);
            }
        }
    }
    let reduced = 0.5 * (&reduced + reduced.transpose());
    let mut vals: Vec<f64> = SymmetricEigen::new(reduced).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Dense eigenvalues of a symmetric tridiagonal matrix.
pub fn dense_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
    }
    for i in 0..n - 1 {
        m[(i, i + 1)] = off[i];
        m[(i + 1, i)] = off[i];
    }
    let mut vals: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Exact rational polynomial in `x`, lowest degree first.
pub type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Coefficients of `P_n^n` as a polynomial in `x = g²` for exact `Δ² = delta_sq`.
pub fn constraint_poly_in_x(n: usize, delta_sq: &BigRational) -> RatPoly {
    let quarter = delta_sq.clone() / rat(4);
    let mut prev: RatPoly = vec![BigRational::one()];
    if n == 0 {
        return prev;
    }
    let mut cur: RatPoly = vec![quarter.clone() - BigRational::one(), rat(4)];
    for k in 2..=n {
        let kk = k as i64;
        // (4k x + Δ²/4 − k²) cur − 4k(k−1)(n−k+1) x prev
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i] += (quarter.clone() - rat(kk * kk)) * c;
            next[i + 1] += rat(4 * kk) * c;
        }
        let b = rat(4 * kk * (kk - 1) * (n as i64 - kk + 1));
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] -= b.clone() * c;
        }
        prev = cur;
        cur = trim(next);
    }
    cur
}

fn eval(p: &RatPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &RatPoly) -> RatPoly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect(),
    )
}

fn remainder(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap().clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= factor.clone() * c;
        }
        r.pop();
        r = trim(if r.is_empty() { vec![BigRational::zero()] } else { r });
        if r.len() < b.len() {
            break;
        }
    }
    r
}

fn is_zero_poly(p: &RatPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Number of distinct real roots of `p` in `(0, ∞)` from an exact Sturm sequence.
pub fn sturm_positive_roots(p: &RatPoly) -> usize {
    let p = trim(p.clone());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let r = remainder(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if is_zero_poly(&r) {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign_of = |v: &BigRational| {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    // Just above zero: first non-vanishing Taylor coefficient sets the sign.
    let at_zero: Vec<i32> = seq
        .iter()
        .map(|q| q.iter().find(|c| !c.is_zero()).map(sign_of).unwrap_or(0))
        .collect();
    let at_inf: Vec<i32> = seq.iter().map(|q| sign_of(q.last().unwrap())).collect();
    changes(at_zero) - changes(at_inf)
}

pub fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

pub fn eval_f64(p: &RatPoly, x: f64) -> f64 {
    use num_traits::ToPrimitive;
    eval(p, &rational(x)).to_f64().unwrap()
}
