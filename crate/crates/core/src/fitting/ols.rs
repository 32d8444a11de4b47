//! Polynomial least squares with coefficient significance tests.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Two-sided significance level used throughout.
pub const ALPHA: f64 = 0.05;

/// Fit of `y = c0 + c1 x (+ c2 x^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegressionResult {
    pub degree: usize,
    pub n: usize,
    /// `[a, b]` or `[a, b, c]`, lowest order first.
    pub coefficients: Vec<f64>,
    /// NaN when there are no residual degrees of freedom.
    pub standard_errors: Vec<f64>,
    /// `None` where the statistic is undefined (no degrees of freedom, or a
    /// zero coefficient with a zero standard error).
    pub t_stats: Vec<Option<f64>>,
    pub significant_at_05: Vec<bool>,
    pub residual_sum_squares: f64,
    pub residual_dof: usize,
    /// Two-sided Student-t critical value at [`ALPHA`], if `residual_dof > 0`.
    pub t_critical: Option<f64>,
}

impl RegressionResult {
    pub fn intercept(&self) -> f64 {
        self.coefficients[0]
    }

    pub fn slope(&self) -> f64 {
        self.coefficients[1]
    }

    /// The second-order coefficient, if this is a quadratic fit.
    pub fn quadratic(&self) -> Option<f64> {
        self.coefficients.get(2).copied()
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c)
    }
}

/// Two-sided critical value `t_{1 - alpha/2, dof}`.
pub fn t_critical(dof: usize, alpha: f64) -> f64 {
    let t = StudentsT::new(0.0, 1.0, dof as f64).expect("dof > 0");
    t.inverse_cdf(1.0 - alpha / 2.0)
}

/// Ordinary least squares of `ys` on `xs` with polynomial `degree` 1 or 2,
/// solved through the normal equations.
///
/// Exactly `degree + 1` points give an interpolating fit with no residual
/// degrees of freedom; its standard errors are NaN and nothing is flagged
/// significant.
pub fn ols_fit(xs: &[f64], ys: &[f64], degree: usize) -> Result<RegressionResult> {
    if !(1..=2).contains(&degree) {
        return Err(Error::InvalidParameter(format!(
            "degree must be 1 or 2, got {degree}"
        )));
    }
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter(format!(
            "xs and ys differ in length ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "regression inputs must be finite".into(),
        ));
    }
    let n = xs.len();
    let p = degree + 1;
    if n < p {
        return Err(Error::TooFewPoints { needed: p, got: n });
    }

    // Scale x into [-1, 1] so the normal equations stay well conditioned
    // for the quadratic term.
    let x_scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if x_scale == 0.0 || xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::SingularDesign);
    }
    let row = |x: f64| -> [f64; 3] {
        let u = x / x_scale;
        [1.0, u, u * u]
    };

    let mut xtx = [[0.0; 3]; 3];
    let mut xty = [0.0; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let r = row(x);
        for i in 0..p {
            xty[i] += r[i] * y;
            for j in 0..p {
                xtx[i][j] += r[i] * r[j];
            }
        }
    }
    let inv = invert(&xtx, p, n as f64)?;

    let mut scaled = [0.0; 3];
    for i in 0..p {
        scaled[i] = (0..p).map(|j| inv[i][j] * xty[j]).sum();
    }
    let coefficients: Vec<f64> = (0..p).map(|j| scaled[j] / x_scale.powi(j as i32)).collect();

    let mut rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = row(x);
            let fitted: f64 = (0..p).map(|j| r[j] * scaled[j]).sum();
            (y - fitted).powi(2)
        })
        .sum();
    let y_energy: f64 = ys.iter().map(|y| y * y).sum();
    let exact = rss <= 1e-20 * y_energy.max(f64::MIN_POSITIVE);
    if exact {
        rss = 0.0;
    }

    let dof = n - p;
    let t_crit = (dof > 0).then(|| t_critical(dof, ALPHA));
    let y_scale = ys.iter().fold(1.0f64, |m, y| m.max(y.abs()));

    let mut standard_errors = Vec::with_capacity(p);
    let mut t_stats = Vec::with_capacity(p);
    let mut significant = Vec::with_capacity(p);
    for j in 0..p {
        let coef = coefficients[j];
        if dof == 0 {
            standard_errors.push(f64::NAN);
            t_stats.push(None);
            significant.push(false);
            continue;
        }
        let sigma2 = rss / dof as f64;
        let se = (sigma2 * inv[j][j]).sqrt() / x_scale.powi(j as i32);
        standard_errors.push(se);
        if se > 0.0 {
            let t = coef / se;
            t_stats.push(Some(t));
            significant.push(t.abs() > t_crit.expect("dof > 0"));
        } else {
            // Exact fit: a term matters if it moves the prediction by more
            // than rounding noise over the observed x range.
            let matters = (scaled[j]).abs() > 1e-9 * y_scale;
            t_stats.push(matters.then(|| f64::INFINITY.copysign(coef)));
            significant.push(matters);
        }
    }

    Ok(RegressionResult {
        degree,
        n,
        coefficients,
        standard_errors,
        t_stats,
        significant_at_05: significant,
        residual_sum_squares: rss,
        residual_dof: dof,
        t_critical: t_crit,
    })
}

/// Gauss-Jordan inverse of the leading `p x p` block, partial pivoting.
/// `scale` is the magnitude of the largest diagonal entry (the point count,
/// since the design columns are scaled into [-1, 1]).
fn invert(m: &[[f64; 3]; 3], p: usize, scale: f64) -> Result<[[f64; 3]; 3]> {
    let mut a = *m;
    let mut inv = [[0.0; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate().take(p) {
        row[i] = 1.0;
    }
    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("non-empty range");
        if a[pivot][col].abs() <= 1e-12 * scale {
            return Err(Error::SingularDesign);
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..p {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..p {
            if r != col {
                let f = a[r][col];
                for j in 0..p {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_line() {
        let r = ols_fit(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0], 1).unwrap();
        assert_abs_diff_eq!(r.intercept(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.slope(), 2.0, epsilon = 1e-12);
        assert_eq!(r.residual_sum_squares, 0.0);
        assert_eq!(r.significant_at_05, vec![true, true]);
    }

    #[test]
    fn exact_parabola_through_three_points() {
        let r = ols_fit(&[0.0, 1.0, 2.0], &[1.0, 2.0, 5.0], 2).unwrap();
        assert_abs_diff_eq!(r.coefficients[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.coefficients[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.coefficients[2], 1.0, epsilon = 1e-12);
        assert_eq!(r.residual_dof, 0);
        assert!(r.standard_errors.iter().all(|se| se.is_nan()));
        assert!(r.t_critical.is_none());
    }

    #[test]
    fn hand_solved_normal_equations() {
        // Sxx = 5, Sxy = 9.5, mean x 1.5, mean y 2.25.
        let r = ols_fit(&[0.0, 1.0, 2.0, 3.0], &[0.0, 1.0, 2.0, 6.0], 1).unwrap();
        assert_abs_diff_eq!(r.slope(), 1.9, epsilon = 1e-12);
        assert_abs_diff_eq!(r.intercept(), 2.25 - 1.9 * 1.5, epsilon = 1e-12);
        // Residuals 0.6, -0.3, -1.2, 0.9.
        assert_abs_diff_eq!(r.residual_sum_squares, 2.7, epsilon = 1e-12);
        // se(b) = sqrt(rss / 2 / Sxx).
        assert_abs_diff_eq!(
            r.standard_errors[1],
            (2.7f64 / 2.0 / 5.0).sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn t_critical_values() {
        assert_abs_diff_eq!(t_critical(1, 0.05), 12.706204736, epsilon = 1e-6);
        assert_abs_diff_eq!(t_critical(10, 0.05), 2.228138852, epsilon = 1e-6);
        assert_abs_diff_eq!(t_critical(100, 0.05), 1.983971519, epsilon = 1e-6);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            ols_fit(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0], 1),
            Err(Error::SingularDesign)
        ));
        assert!(matches!(
            ols_fit(&[1.0, 1.0, 2.0, 2.0], &[1.0, 2.0, 3.0, 4.0], 2),
            Err(Error::SingularDesign)
        ));
        assert!(matches!(
            ols_fit(&[1.0], &[1.0], 1),
            Err(Error::TooFewPoints { needed: 2, got: 1 })
        ));
        assert!(ols_fit(&[1.0, 2.0], &[1.0], 1).is_err());
        assert!(ols_fit(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], 3).is_err());
    }

    #[test]
    fn linear_truth_has_insignificant_quadratic_term() {
        let xs: Vec<f64> = (5..=80).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x + 18.0).collect();
        let r = ols_fit(&xs, &ys, 2).unwrap();
        assert_abs_diff_eq!(r.quadratic().unwrap(), 0.0, epsilon = 1e-9);
        assert!(!r.significant_at_05[2]);
        assert!(r.significant_at_05[1]);
    }
}
