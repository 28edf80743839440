use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::polyhedral::{format_vector, Cone, ConeLike, Fan};
use crate::stacky::{present_quotient, QuotientPresentation, StackyFan};
use crate::zlinalg::{primitive, IntMatrix, ZVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fantastack {
    pub stacky_fan: StackyFan,
    pub presentation: QuotientPresentation,
}

/// The fantastack of a fan `Σ` on `N = Z^r` and `β: Z^n -> N`.
///
/// `Σ̂` has one cone `cone(e_i : β(e_i) in σ)` per cone `σ` of `Σ`.
pub fn fantastack(sigma: &Fan, beta_images: &[ZVec]) -> Result<Fantastack> {
    let r = sigma.ambient_rank();
    let n = beta_images.len();
    if let Some(i) = beta_images.iter().position(|v| v.len() != r) {
        return Err(Error::DimensionMismatch(format!("beta(e_{}) does not lie in Z^{r}", i + 1)));
    }
    let beta = IntMatrix::from_columns(r, beta_images);
    if beta.rank() != r {
        return Err(Error::FantastackPreconditionViolated("the cokernel of beta is infinite".into()));
    }
    let primitive_images: Vec<ZVec> = beta_images.iter().map(|v| primitive(v.clone())).collect();
    for ray in sigma.rays() {
        if !primitive_images.contains(&ray) {
            return Err(Error::FantastackPreconditionViolated(format!(
                "the ray through {} contains no beta(e_i)",
                format_vector(&ray)
            )));
        }
    }
    for (i, v) in beta_images.iter().enumerate() {
        if !sigma.support_contains(v) {
            return Err(Error::FantastackPreconditionViolated(format!(
                "beta(e_{}) = {} is not in the support of the fan",
                i + 1,
                format_vector(v)
            )));
        }
    }
    let cones: Vec<Cone> = sigma
        .maximal_cones()
        .iter()
        .map(|c| {
            let idx: Vec<usize> = (0..n).filter(|&i| c.contains(&beta_images[i])).collect();
            Cone::coordinate(n, &idx)
        })
        .collect();
    let hat = Fan::generated_by(n, cones);
    let stacky_fan = StackyFan::new(hat, FgAbGroup::free(r), beta_images)?;
    let presentation = present_quotient(&stacky_fan)?;
    Ok(Fantastack { stacky_fan, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::zvec;

    fn images(v: &[&[i64]]) -> Vec<ZVec> {
        v.iter().map(|x| zvec(x)).collect()
    }

    #[test]
    fn worked_examples() {
        let a1 = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap();
        let f = fantastack(&a1, &images(&[&[1, 0], &[1, 2]])).unwrap();
        assert_eq!(f.presentation.to_string(), "[A^2 / mu_2], weights (1,1)");
        let f = fantastack(&a1, &images(&[&[2, 0], &[1, 2]])).unwrap();
        assert_eq!(f.presentation.to_string(), "[A^2 / mu_4], weights (1,2)");

        let blowup = Fan::from_i64(2, &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]]).unwrap();
        let f = fantastack(&blowup, &images(&[&[1, 0], &[1, 1], &[0, 1]])).unwrap();
        assert_eq!(f.presentation.to_string(), "[(A^3 \\ V(x1,x3)) / G_m], weights (1,-1,1)");

        let square = Fan::from_i64(3, &[&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]]).unwrap();
        let f = fantastack(&square, &images(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]])).unwrap();
        assert_eq!(f.presentation.to_string(), "[A^4 / G_m], weights (1,-1,1,-1)");

        let ray = Fan::affine_space(1);
        let f = fantastack(&ray, &images(&[&[1], &[1]])).unwrap();
        assert_eq!(f.presentation.to_string(), "[A^2 / G_m], weights (1,-1)");
    }

    #[test]
    fn preconditions() {
        let a1 = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap();
        let e = fantastack(&a1, &images(&[&[1, 0]])).unwrap_err();
        assert!(matches!(e, Error::FantastackPreconditionViolated(m) if m.contains("infinite")));
        let e = fantastack(&a1, &images(&[&[1, 0], &[1, 1]])).unwrap_err();
        assert!(matches!(e, Error::FantastackPreconditionViolated(m) if m.contains("ray")));
        let e = fantastack(&a1, &images(&[&[1, 0], &[1, 2], &[0, 1]])).unwrap_err();
        assert!(matches!(e, Error::FantastackPreconditionViolated(m) if m.contains("support")));
    }
}
