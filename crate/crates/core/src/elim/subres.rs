//! Signed subresultant coefficients and polynomials via the
//! Sylvester–Habicht matrices, plus the `PmV` sign-count.

use crate::polycore::{bareiss_determinant, Poly, Ring};

/// Rows `X^(q-j-1) P, ..., P, Q, ..., X^(p-j-1) Q` as coefficient vectors,
/// highest power first, over `p + q - j` columns.
fn syha_rows<R: Ring>(p: &Poly<R>, q: &Poly<R>, j: usize) -> Vec<Vec<R>> {
    let dp = p.degree().unwrap();
    let dq = q.degree().unwrap();
    let ncols = dp + dq - j;
    let row_of = |poly: &Poly<R>, shift: usize| -> Vec<R> {
        // coefficient of X^e sits at column ncols - 1 - e
        let mut row = vec![R::zero_elem(); ncols];
        for (e, c) in poly.coeffs().iter().enumerate() {
            row[ncols - 1 - (e + shift)] = c.clone();
        }
        row
    };
    let mut rows = Vec::with_capacity(dp + dq - 2 * j);
    for s in (0..dq - j).rev() {
        rows.push(row_of(p, s));
    }
    for s in 0..dp - j {
        rows.push(row_of(q, s));
    }
    rows
}

/// Signed subresultant coefficients `sRes_j(P, Q)` for `j = 0..=p`, indexed
/// by `j`. Requires `deg P > deg Q >= 0`. `sRes_p = lc(P)`, `sRes_(p-1)` is
/// the coefficient of `X^(p-1)` in `Q`, and entries with `q < j < p - 1` are zero.
pub fn signed_subresultant_coeffs<R: Ring>(p: &Poly<R>, q: &Poly<R>) -> Vec<R> {
    let dp = p.degree().expect("nonzero P");
    let dq = q.degree().expect("nonzero Q");
    assert!(dp > dq, "signed subresultants need deg P > deg Q");
    let mut out = vec![R::zero_elem(); dp + 1];
    out[dp] = p.lc();
    out[dp - 1] = q.coeff(dp - 1);
    for (j, slot) in out.iter_mut().enumerate().take(dq + 1) {
        if j == dp - 1 {
            continue;
        }
        let rows = syha_rows(p, q, j);
        let k = dp + dq - 2 * j;
        let m: Vec<Vec<R>> = rows.into_iter().map(|r| r[..k].to_vec()).collect();
        *slot = bareiss_determinant(m);
    }
    out
}

/// Signed subresultant polynomial `sResP_j(P, Q)` for `j <= deg Q < deg P`.
pub fn signed_subresultant_poly<R: Ring>(p: &Poly<R>, q: &Poly<R>, j: usize) -> Poly<R> {
    let dp = p.degree().expect("nonzero P");
    let dq = q.degree().expect("nonzero Q");
    assert!(dp > dq && j <= dq);
    if j == dq && dp == dq + 1 {
        return q.clone();
    }
    let rows = syha_rows(p, q, j);
    let k = dp + dq - 2 * j;
    let ncols = dp + dq - j;
    let coeffs = (0..=j)
        .map(|i| {
            let col = ncols - 1 - i;
            let m: Vec<Vec<R>> = rows
                .iter()
                .map(|r| {
                    let mut v = r[..k - 1].to_vec();
                    v.push(r[col].clone());
                    v
                })
                .collect();
            bareiss_determinant(m)
        })
        .collect();
    Poly::new(coeffs)
}

/// `PmV` of a sign sequence given from the highest index down; the first
/// entry must be nonzero. For the signed subresultant coefficients of
/// `(P, P')` this is the number of distinct real roots of `P`.
pub fn pmv(signs: &[i32]) -> i64 {
    assert!(signs.first().is_some_and(|&s| s != 0), "PmV needs a nonzero head");
    let mut total = 0i64;
    let mut last: Option<(usize, i32)> = None;
    for (idx, &s) in signs.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some((li, ls)) = last {
            let k = idx - li;
            if k % 2 == 1 {
                let eps = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
                total += eps * i64::from(ls * s);
            }
        }
        last = Some((idx, s));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::UnivariatePolynomial;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c)
    }

    fn signs(v: &[BigInt]) -> Vec<i32> {
        v.iter().rev().map(|c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 }).collect()
    }

    fn count_real(p: &UnivariatePolynomial) -> i64 {
        pmv(&signs(&signed_subresultant_coeffs(p, &p.derivative())))
    }

    #[test]
    fn quadratic_counts() {
        assert_eq!(count_real(&up(&[-1, 0, 1])), 2);
        assert_eq!(count_real(&up(&[1, 0, 1])), 0);
        assert_eq!(count_real(&up(&[1, 0, -1])), 2);
        assert_eq!(count_real(&up(&[0, 0, 1])), 1);
    }

    #[test]
    fn cubic_counts() {
        assert_eq!(count_real(&up(&[-6, 11, -6, 1])), 3);
        assert_eq!(count_real(&up(&[1, 0, 0, 1])), 1);
        // (x - 1)^2 (x + 2)
        assert_eq!(count_real(&up(&[2, -3, 0, 1])), 2);
    }

    #[test]
    fn gcd_from_subresultants() {
        // P = (x-1)^2 (x+2), P' = 3(x-1)(x+1); gcd = x - 1, degree 1
        let p = up(&[2, -3, 0, 1]);
        let q = p.derivative();
        let s = signed_subresultant_coeffs(&p, &q);
        assert_eq!(s[0], BigInt::from(0));
        assert_ne!(s[1], BigInt::from(0));
        let g = signed_subresultant_poly(&p, &q, 1);
        assert_eq!(g.primitive_part(), up(&[-1, 1]));
    }

    #[test]
    fn pmv_gaps() {
        assert_eq!(pmv(&[1, 0, 0, 1]), -1);
        assert_eq!(pmv(&[1, 0, 1]), 0);
    }
}
