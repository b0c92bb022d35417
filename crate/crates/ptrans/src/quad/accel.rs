//! Sequence acceleration for the partial sums of alternating panel series.

use crate::real::Real;

/// Repeated Aitken delta-squared. Returns the extrapolated limit and a
/// residual taken from the last contraction step, or None when there are
/// too few terms or a vanishing denominator stops the recursion early.
pub fn iterated_aitken<T: Real>(s: &[T]) -> Option<(T, T)> {
    if s.len() < 3 {
        return None;
    }
    let tiny = T::min_positive_value() * T::cst(1e4);
    let mut row: Vec<T> = s.to_vec();
    let mut best = *row.last().unwrap();
    let mut residual = T::infinity();
    while row.len() >= 3 {
        let mut next = Vec::with_capacity(row.len() - 2);
        for i in 0..row.len() - 2 {
            let d1 = row[i + 1] - row[i];
            let d2 = row[i + 2] - row[i + 1];
            let den = d2 - d1;
            if den.abs() < tiny.max(T::epsilon() * row[i + 2].abs()) {
                // sequence already flat at working precision
                return Some((row[i + 2], d2.abs()));
            }
            next.push(row[i + 2] - d2 * d2 / den);
        }
        let cand = *next.last().unwrap();
        residual = (cand - best).abs();
        best = cand;
        row = next;
    }
    Some((best, residual))
}

/// Levin u-transform of a term sequence, direct binomial form with beta = 1.
/// `terms` are the series terms a_0..a_k; returns the limit estimate and the
/// difference against the order-(k-1) estimate as residual.
pub fn levin_u<T: Real>(terms: &[T]) -> Option<(T, T)> {
    if terms.len() < 3 {
        return None;
    }
    let est_k = levin_u_order(terms, terms.len() - 1)?;
    let est_km1 = levin_u_order(terms, terms.len() - 2)?;
    Some((est_k, (est_k - est_km1).abs()))
}

fn levin_u_order<T: Real>(terms: &[T], k: usize) -> Option<T> {
    let one = T::one();
    let kp1 = T::cst((k + 1) as f64);
    let mut partial = T::zero();
    let mut num = T::zero();
    let mut den = T::zero();
    let mut binom = one; // C(k, j), updated multiplicatively
    let mut sign = one;
    for j in 0..=k {
        partial = partial + terms[j];
        let omega = (one + T::cst(j as f64)) * terms[j];
        if omega == T::zero() {
            return None;
        }
        let c = ((T::cst(j as f64) + one) / kp1).powi(k as i32 - 1);
        let w = sign * binom * c / omega;
        num = num + w * partial;
        den = den + w;
        // advance C(k, j) -> C(k, j+1)
        binom = binom * T::cst((k - j) as f64) / T::cst((j + 1) as f64);
        sign = -sign;
    }
    if den == T::zero() || !num.is_finite() || !den.is_finite() {
        return None;
    }
    Some(num / den)
}
