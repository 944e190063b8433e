use super::RepError;
use crate::linalg::Matrix;
use crate::partition::Partition;
use crate::scalar::Field;

/// Decides whether every sufficiently long word in `ops` vanishes.
///
/// Runs the joint kernel filtration `V₀ = 0`, `V_{k+1} = {w : Xw ∈ V_k ∀X}`
/// with each `V_k` stored as the kernel of a row-reduced matrix `Q_k`, so
/// `Q_{k+1}` is a row basis of the stacked products `Q_k X`.
pub fn is_nilpotent_set<F: Field>(ops: &[Matrix<F>]) -> Result<bool, RepError> {
    let Some(first) = ops.first() else {
        return Ok(true);
    };
    let d = first.rows();
    for x in ops {
        if x.shape() != (d, d) {
            return Err(RepError::Shape(format!(
                "operator of shape {:?} in a set acting on dimension {d}",
                x.shape()
            )));
        }
    }
    let mut q = Matrix::<F>::identity(d);
    for _ in 0..=d {
        if q.rows() == 0 {
            return Ok(true);
        }
        let products: Vec<Matrix<F>> = ops.iter().map(|x| &q * x).collect();
        let refs: Vec<&Matrix<F>> = products.iter().collect();
        let next = Matrix::vstack(d, &refs).row_basis();
        if next.rows() == q.rows() {
            // The filtration stalled short of the whole space.
            return Ok(false);
        }
        q = next;
    }
    Ok(q.rows() == 0)
}

fn check_square<F: Field>(a: &Matrix<F>) -> Result<(), RepError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(RepError::Shape(format!("expected a square matrix, got {:?}", a.shape())))
    }
}

/// Dimensions `dim Ker Aⁱ` for `i = 0, 1, …` up to the first full kernel.
fn kernel_dims<F: Field>(a: &Matrix<F>) -> Result<Vec<usize>, RepError> {
    check_square(a)?;
    let d = a.rows();
    let mut dims = vec![0];
    let mut power = Matrix::<F>::identity(d);
    while *dims.last().unwrap() < d {
        power = &power * a;
        let k = d - power.rank();
        if k == *dims.last().unwrap() {
            return Err(RepError::NotNilpotent);
        }
        dims.push(k);
    }
    Ok(dims)
}

/// Jordan type of a nilpotent matrix, read off the kernel dimensions of its
/// powers.
pub fn jordan_type<F: Field>(a: &Matrix<F>) -> Result<Partition, RepError> {
    let dims = kernel_dims(a)?;
    let columns: Vec<usize> = dims.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(Partition::new(columns)
        .expect("kernel increments of a nilpotent matrix are nonincreasing")
        .transpose())
}

/// Nilpotent Jordan matrix of type `λ`: one block per part, in part order,
/// each the shift `f_j ↦ f_{j+1}` (ones on the subdiagonal).
pub fn jordan_matrix<F: Field>(lambda: &Partition) -> Matrix<F> {
    let d = lambda.size();
    let mut m = Matrix::zeros(d, d);
    let mut offset = 0;
    for &k in lambda.parts() {
        for j in 0..k - 1 {
            m[(offset + j + 1, offset + j)] = F::one();
        }
        offset += k;
    }
    m
}

/// A Jordan basis of a nilpotent matrix: `P` with `P⁻¹ A P = J_λ` in the
/// layout of [`jordan_matrix`].
pub fn jordan_basis<F: Field>(a: &Matrix<F>) -> Result<(Partition, Matrix<F>), RepError> {
    let dims = kernel_dims(a)?;
    let d = a.rows();
    let height = dims.len() - 1;
    let mut power = Matrix::<F>::identity(d);
    let mut kernels = vec![Vec::new()];
    for _ in 1..=height {
        power = &power * a;
        kernels.push(power.nullspace());
    }

    // (length, top vector) of every chain found so far, longest first.
    let mut chains: Vec<(usize, Vec<F>)> = Vec::new();
    for k in (1..=height).rev() {
        // Vectors already accounted for at level k: Ker A^{k-1} together
        // with the level-k members of the longer chains.
        let mut span: Vec<Vec<F>> = kernels[k - 1].clone();
        for (len, top) in &chains {
            let mut w = top.clone();
            for _ in 0..len - k {
                w = a.apply(&w);
            }
            span.push(w);
        }
        let mut rank = Matrix::from_rows(d, span.clone()).rank();
        for cand in &kernels[k] {
            span.push(cand.clone());
            let r = Matrix::from_rows(d, span.clone()).rank();
            if r > rank {
                rank = r;
                chains.push((k, cand.clone()));
            } else {
                span.pop();
            }
        }
    }

    let mut columns = Vec::with_capacity(d);
    for (len, top) in &chains {
        let mut w = top.clone();
        for _ in 0..*len {
            let next = a.apply(&w);
            columns.push(w);
            w = next;
        }
    }
    let lambda = Partition::new(chains.iter().map(|(l, _)| *l).collect())
        .expect("chains are collected longest first");
    Ok((lambda, Matrix::from_columns(d, &columns)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type Q = Matrix<Rational>;

    #[test]
    fn nilpotent_set_examples() {
        let j = Q::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(is_nilpotent_set(&[j]).unwrap());
        assert!(!is_nilpotent_set(&[Q::identity(2)]).unwrap());
        let e12 = Q::unit(2, 2, 0, 1);
        let e21 = Q::unit(2, 2, 1, 0);
        assert!(is_nilpotent_set(&[e12.clone()]).unwrap());
        assert!(!is_nilpotent_set(&[e12, e21]).unwrap());
        assert!(is_nilpotent_set::<Rational>(&[]).unwrap());
        assert!(is_nilpotent_set(&[Q::zeros(0, 0)]).unwrap());
        assert!(is_nilpotent_set(&[Q::zeros(2, 2), Q::zeros(3, 3)]).is_err());
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type(&Q::zeros(3, 3)).unwrap(), Partition::column(3));
        let lam: Partition = "2,1,1".parse().unwrap();
        assert_eq!(jordan_type(&jordan_matrix::<Rational>(&lam)).unwrap(), lam);
        assert_eq!(
            jordan_type(&jordan_matrix::<Rational>(&Partition::row(4))).unwrap(),
            Partition::row(4)
        );
        assert_eq!(jordan_type(&Q::identity(2)), Err(RepError::NotNilpotent));
        assert_eq!(jordan_type(&Q::zeros(0, 0)).unwrap(), Partition::empty());
    }

    #[test]
    fn jordan_basis_conjugates_to_normal_form() {
        // Strictly upper with a 2-block and a 1-block hidden in it.
        let a = Q::from_ints(&[&[0, 2, -1], &[0, 0, 0], &[0, 0, 0]]);
        let (lam, p) = jordan_basis(&a).unwrap();
        assert_eq!(lam, "2,1".parse().unwrap());
        assert_eq!(a.conjugate_by(&p), jordan_matrix(&lam));

        let b = Q::from_ints(&[
            &[0, 1, 3, 0, 2],
            &[0, 0, 1, -1, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 4],
            &[0, 0, 0, 0, 0],
        ]);
        let (lam, p) = jordan_basis(&b).unwrap();
        assert_eq!(lam, jordan_type(&b).unwrap());
        assert_eq!(b.conjugate_by(&p), jordan_matrix(&lam));
    }
}
