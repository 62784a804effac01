//! Sylvester resultants and discriminants.
//!
//! [`resultant`] evaluates the Sylvester determinant by specializing the
//! remaining variables at integer points and interpolating, which keeps
//! every elimination over plain integers. [`resultant_bareiss`] eliminates
//! directly over polynomial entries and serves as a cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Coefficient, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::symmetry::Variable;

/// Sylvester matrix of `p` and `q` viewed as univariate in `v`.
///
/// With `m = deg_v p` and `n = deg_v q` the matrix is `(m+n) × (m+n)`: `n`
/// shifted rows of the coefficients of `p` followed by `m` shifted rows of
/// the coefficients of `q`, highest power first.
pub fn sylvester_matrix(p: &Polynomial, q: &Polynomial, v: Variable) -> Result<Vec<Vec<Polynomial>>> {
    let (m, n) = (p.degree_in(v) as usize, q.degree_in(v) as usize);
    if m == 0 || n == 0 {
        return Err(Error::Degree(format!(
            "resultant in {v} needs positive degrees, got {m} and {n}"
        )));
    }
    let size = m + n;
    let pc: Vec<_> = p.coefficients_wrt(v).into_iter().rev().collect();
    let qc: Vec<_> = q.coefficients_wrt(v).into_iter().rev().collect();
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        rows.push(shifted_row(&pc, shift, size));
    }
    for shift in 0..m {
        rows.push(shifted_row(&qc, shift, size));
    }
    Ok(rows)
}

fn shifted_row(coeffs: &[Polynomial], shift: usize, size: usize) -> Vec<Polynomial> {
    let mut row = vec![Polynomial::zero(); size];
    row[shift..shift + coeffs.len()].clone_from_slice(coeffs);
    row
}

/// Determinant of a square polynomial matrix by Bareiss fraction-free
/// elimination. Every intermediate division is exact.
pub fn determinant(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Polynomial::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `p` and `q` with respect to `v`: the determinant of their
/// Sylvester matrix, a polynomial in the remaining variables.
pub fn resultant(p: &Polynomial, q: &Polynomial, v: Variable) -> Result<Polynomial> {
    check_degrees(p, q, v)?;
    Ok(resultant_interp(p, q, v))
}

/// Same value as [`resultant`], by Bareiss elimination on the symbolic
/// Sylvester matrix.
pub fn resultant_bareiss(p: &Polynomial, q: &Polynomial, v: Variable) -> Result<Polynomial> {
    Ok(determinant(sylvester_matrix(p, q, v)?))
}

fn check_degrees(p: &Polynomial, q: &Polynomial, v: Variable) -> Result<()> {
    let (m, n) = (p.degree_in(v), q.degree_in(v));
    if m == 0 || n == 0 {
        return Err(Error::Degree(format!(
            "resultant in {v} needs positive degrees, got {m} and {n}"
        )));
    }
    Ok(())
}

fn leading_coefficient(p: &Polynomial, v: Variable) -> Polynomial {
    p.coefficients_wrt(v).pop().unwrap_or_else(Polynomial::zero)
}

fn resultant_interp(p: &Polynomial, q: &Polynomial, v: Variable) -> Polynomial {
    let Some(w) = Variable::ALL
        .into_iter()
        .find(|&w| w != v && (p.contains(w) || q.contains(w)))
    else {
        return constant_resultant(p, q, v);
    };
    let (m, n) = (p.degree_in(v), q.degree_in(v));
    let bound = (p.degree_in(w) * n + m * q.degree_in(w)) as usize;
    let (lp, lq) = (leading_coefficient(p, v), leading_coefficient(q, v));
    let mut points: Vec<Coefficient> = Vec::with_capacity(bound + 1);
    let mut values: Vec<Polynomial> = Vec::with_capacity(bound + 1);
    let mut a = 0i64;
    while points.len() <= bound {
        let at = Coefficient::from_integer(BigInt::from(a));
        a += 1;
        if lp.substitute(w, &at).is_zero() || lq.substitute(w, &at).is_zero() {
            continue;
        }
        values.push(resultant_interp(&p.substitute(w, &at), &q.substitute(w, &at), v));
        points.push(at);
    }
    newton_interpolate(&points, values, w)
}

/// Polynomial in `w` through `(points[i], values[i])`; values may involve
/// other variables.
fn newton_interpolate(points: &[Coefficient], mut values: Vec<Polynomial>, w: Variable) -> Polynomial {
    let n = points.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let diff = &values[i] - &values[i - 1];
            let scale = (&points[i] - &points[i - j]).recip();
            values[i] = diff.scale(&scale);
        }
    }
    let wm = Monomial::var(w);
    let mut r = values[n - 1].clone();
    for i in (0..n - 1).rev() {
        r = &(&r.mul_monomial(&wm) - &r.scale(&points[i])) + &values[i];
    }
    r
}

fn constant_resultant(p: &Polynomial, q: &Polynomial, v: Variable) -> Polynomial {
    let as_const = |c: &Polynomial| c.coefficient(&Monomial::ONE).cloned().unwrap_or_else(Coefficient::zero);
    let pc: Vec<Coefficient> = p.coefficients_wrt(v).iter().rev().map(as_const).collect();
    let qc: Vec<Coefficient> = q.coefficients_wrt(v).iter().rev().map(as_const).collect();
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    let size = m + n;
    let mut rows: Vec<Vec<Coefficient>> = Vec::with_capacity(size);
    for (coeffs, count) in [(&pc, n), (&qc, m)] {
        for shift in 0..count {
            let mut row = vec![Coefficient::zero(); size];
            row[shift..shift + coeffs.len()].clone_from_slice(coeffs);
            rows.push(row);
        }
    }
    Polynomial::constant(rational_determinant(rows))
}

/// Determinant over Q: rows are scaled to integers, then reduced by
/// integer Bareiss elimination.
fn rational_determinant(rows: Vec<Vec<Coefficient>>) -> Coefficient {
    let n = rows.len();
    let mut denom = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            denom *= &l;
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Coefficient::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    let det = Coefficient::new(det, denom);
    if negate {
        -det
    } else {
        det
    }
}

/// `res_v(p, ∂p/∂v)` with no leading-coefficient division or sign fix.
pub fn discriminant(p: &Polynomial, v: Variable) -> Result<Polynomial> {
    let d = p.degree_in(v);
    if d < 2 {
        return Err(Error::Degree(format!("discriminant in {v} needs degree >= 2, got {d}")));
    }
    resultant(p, &p.derivative(v), v)
}
