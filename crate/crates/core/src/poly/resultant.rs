//! Sylvester resultants via fraction-free (Bareiss) elimination.

use super::MPoly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Sylvester matrix of `f`, `g` in variable `var`: the deg_g rows of shifted
/// f-coefficients sit above the deg_f rows of shifted g-coefficients.
pub fn sylvester_matrix<F: Field>(f: &MPoly<F>, g: &MPoly<F>, var: usize) -> Result<Vec<Vec<MPoly<F>>>> {
    let m = f.degree_in(var).unwrap_or(0) as usize;
    let n = g.degree_in(var).unwrap_or(0) as usize;
    if m == 0 || n == 0 {
        let name = f.vars()[var].clone();
        return Err(Error::VariableAbsent(name));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let zero = f.constant_like(f.field().zero());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + k] = fc[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + k] = gc[n - k].clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Determinant of a square matrix of polynomials by Bareiss elimination.
pub fn bareiss_det<F: Field>(mut a: Vec<Vec<MPoly<F>>>) -> Result<MPoly<F>> {
    let n = a.len();
    let one = a[0][0].constant_like(a[0][0].field().one());
    let mut sign_negative = false;
    let mut prev = one;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(a[0][0].constant_like(a[0][0].field().zero()));
        };
        if piv != k {
            a.swap(piv, k);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = a[i][k].constant_like(a[i][k].field().zero());
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_negative { det.neg() } else { det })
}

/// Res_var(f, g).
pub fn resultant<F: Field>(f: &MPoly<F>, g: &MPoly<F>, var: usize) -> Result<MPoly<F>> {
    bareiss_det(sylvester_matrix(f, g, var)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn p(terms: &[(i64, &[u32])]) -> MPoly<Rationals> {
        MPoly::from_i64_terms(&Rationals, &["x", "y"], terms)
    }

    #[test]
    fn spec_examples() {
        let f = p(&[(1, &[0, 1]), (-1, &[2, 0])]);
        let g = p(&[(1, &[0, 1]), (-1, &[0, 0])]);
        assert_eq!(resultant(&f, &g, 1).unwrap().to_string(), "x^2 - 1");
        let f = p(&[(1, &[0, 2]), (-1, &[1, 0])]);
        let g = p(&[(1, &[0, 1])]);
        assert_eq!(resultant(&f, &g, 1).unwrap().to_string(), "-x");
    }

    #[test]
    fn constant_in_variable_rejected() {
        let f = p(&[(1, &[0, 1])]);
        let g = p(&[(1, &[1, 0])]);
        assert!(matches!(resultant(&f, &g, 1), Err(Error::VariableAbsent(v)) if v == "y"));
    }

    #[test]
    fn three_by_three_needs_exact_division() {
        // Res_y(y^2 + x y + 1, y - x) = x^2 + x^2 + 1
        let f = p(&[(1, &[0, 2]), (1, &[1, 1]), (1, &[0, 0])]);
        let g = p(&[(1, &[0, 1]), (-1, &[1, 0])]);
        assert_eq!(resultant(&f, &g, 1).unwrap().to_string(), "2*x^2 + 1");
    }
}
