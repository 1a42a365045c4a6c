use super::basis::{BasisTable, GradedAlgebra};
use super::presentation::AlgebraPresentation;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PhiComparison {
    pub presentation: AlgebraPresentation,
    pub dims: Vec<usize>,
    pub equal: Vec<bool>,
}

impl PhiComparison {
    pub fn all_equal(&self) -> bool {
        self.equal.iter().all(|&b| b)
    }

    /// First degree where the dimensions disagree.
    pub fn first_difference(&self) -> Option<usize> {
        self.equal.iter().position(|&b| !b)
    }
}

/// Keep only the relations of degree at most `n` and compare dimensions with the full algebra
/// through degree `reference_dims.len() - 1`.
pub fn phi_n(
    p: &AlgebraPresentation,
    n: usize,
    reference_dims: &[usize],
    check: usize,
) -> Result<PhiComparison> {
    if reference_dims.is_empty() || check >= reference_dims.len() {
        return Err(Error::CheckDegreeTooLarge {
            check,
            available: reference_dims.len().saturating_sub(1),
        });
    }
    let rels = p
        .relations()
        .iter()
        .enumerate()
        .filter(|(i, _)| p.relation_degree(*i).is_none_or(|d| d <= n))
        .map(|(_, r)| r.clone())
        .collect();
    let q = AlgebraPresentation::new(
        p.field().clone(),
        p.generators().to_vec(),
        rels,
        Default::default(),
    )?;
    let dims = BasisTable::build(&q, check)?.dims();
    let equal = dims
        .iter()
        .zip(reference_dims)
        .map(|(a, b)| a == b)
        .collect();
    Ok(PhiComparison {
        presentation: q,
        dims,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn commutative_plane_is_its_own_phi2() {
        let p = AlgebraPresentation::parse(Field::rationals(), &[("x", 1), ("y", 1)], &["xy - yx"])
            .unwrap();
        let full = BasisTable::build(&p, 5).unwrap().dims();
        let c = phi_n(&p, 2, &full, 5).unwrap();
        assert!(c.all_equal());
    }

    #[test]
    fn down_up_phi() {
        let p = AlgebraPresentation::parse(
            Field::rationals(),
            &[("x", 1), ("y", 1)],
            &["x^2y - yx^2", "xy^2 - y^2x"],
        )
        .unwrap();
        let full = BasisTable::build(&p, 4).unwrap().dims();
        let c2 = phi_n(&p, 2, &full, 4).unwrap();
        assert_eq!(c2.dims, vec![1, 2, 4, 8, 16]);
        assert_eq!(c2.first_difference(), Some(3));
        assert!(phi_n(&p, 3, &full, 4).unwrap().all_equal());
        assert!(matches!(
            phi_n(&p, 3, &full, 5),
            Err(Error::CheckDegreeTooLarge { .. })
        ));
    }
}
