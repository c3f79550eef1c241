//! Natural cubic spline interpolation for envelope construction.

/// Interpolates through `(xs, ys)` knots and evaluates at integer positions
/// `0..n_eval`. Knot abscissae must be strictly increasing and are allowed to
/// extend beyond the evaluation range (mirrored boundary knots do).
///
/// Two knots degenerate to a straight line. Panics on fewer than two knots or
/// unsorted abscissae; callers guarantee both.
pub fn cubic_interp_at_indices(xs: &[f64], ys: &[f64], n_eval: usize) -> Vec<f64> {
    let k = xs.len();
    assert_eq!(k, ys.len(), "knot arrays must match");
    assert!(k >= 2, "need at least two knots");
    debug_assert!(xs.windows(2).all(|w| w[0] < w[1]), "knots must increase");

    // Second derivatives from the natural spline tridiagonal system.
    let m = second_derivatives(xs, ys);

    let mut out = Vec::with_capacity(n_eval);
    let mut seg = 0usize;
    for t in 0..n_eval {
        let x = t as f64;
        while seg + 2 < k && xs[seg + 1] < x {
            seg += 1;
        }
        let (x0, x1) = (xs[seg], xs[seg + 1]);
        let h = x1 - x0;
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        let val = a * ys[seg]
            + b * ys[seg + 1]
            + ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * (h * h) / 6.0;
        out.push(val);
    }
    out
}

fn second_derivatives(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let k = xs.len();
    let mut m = vec![0.0; k];
    if k == 2 {
        return m;
    }
    // Thomas algorithm on the interior rows; natural ends m[0] = m[k-1] = 0.
    let mut diag = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    let mut upper = vec![0.0; k];
    for i in 1..k - 1 {
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for i in 2..k - 1 {
        let h0 = xs[i] - xs[i - 1];
        let w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for i in (1..k - 1).rev() {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    }
    m
}
