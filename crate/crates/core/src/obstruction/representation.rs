use crate::error::{Error, Result};
use crate::fpgroup::{evaluate_word_with_inverses, Presentation};
use crate::jetcore::scalar::Scalar;
use crate::jetcore::{JetDiffeo, JetMap};
use crate::jetgroup::{dilation_homotopy, G31};

/// Homomorphism from a finitely presented group to `G_{k,l}`, checked on
/// every relator at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F: Scalar> {
    presentation: Presentation,
    l: usize,
    k: usize,
    images: Vec<JetDiffeo<F>>,
}

/// How far each relator is from evaluating to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<F: Scalar> {
    /// `ρ(r) - id` for each relator, in presentation order.
    pub deviations: Vec<JetMap<F>>,
}

impl<F: Scalar> ValidationReport<F> {
    pub fn is_valid(&self) -> bool {
        self.deviations.iter().all(|d| d.num_terms() == 0)
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.deviations.iter().position(|d| d.num_terms() > 0)
    }
}

fn check_images<F: Scalar>(
    p: &Presentation,
    l: usize,
    k: usize,
    images: &[JetDiffeo<F>],
) -> Result<()> {
    if images.len() != p.num_generators() {
        let missing = p
            .generators()
            .get(images.len())
            .cloned()
            .unwrap_or_else(|| format!("#{}", images.len()));
        return Err(if images.len() < p.num_generators() {
            Error::UnassignedGenerator(missing)
        } else {
            Error::dim("number of images", p.num_generators(), images.len())
        });
    }
    for g in images {
        if g.l() != l {
            return Err(Error::dim("image codimension", l, g.l()));
        }
        if g.k() != k {
            return Err(Error::dim("image jet order", k, g.k()));
        }
    }
    Ok(())
}

/// Evaluates every relator on the candidate images.
pub fn validate_rep<F: Scalar>(
    p: &Presentation,
    l: usize,
    k: usize,
    images: &[JetDiffeo<F>],
) -> Result<ValidationReport<F>> {
    check_images(p, l, k, images)?;
    let inverses = images.iter().map(JetDiffeo::invert).collect::<Result<Vec<_>>>()?;
    let id = JetMap::identity(l, k)?;
    let deviations = p
        .relators()
        .iter()
        .map(|r| evaluate_word_with_inverses(r, images, &inverses, l, k)?.map().sub(&id))
        .collect::<Result<Vec<_>>>()?;
    Ok(ValidationReport { deviations })
}

impl<F: Scalar> Representation<F> {
    pub fn new(p: Presentation, l: usize, k: usize, images: Vec<JetDiffeo<F>>) -> Result<Self> {
        let report = validate_rep(&p, l, k, &images)?;
        if let Some(relator) = report.first_violation() {
            return Err(Error::RelatorViolated { relator });
        }
        Ok(Representation {
            presentation: p,
            l,
            k,
            images,
        })
    }

    pub fn trivial(p: Presentation, l: usize, k: usize) -> Result<Self> {
        let images = vec![JetDiffeo::identity(l, k)?; p.num_generators()];
        Self::new(p, l, k, images)
    }

    /// One-variable representation from `(a1, a2, a0)` chart coordinates,
    /// truncated to order `k ≤ 3`.
    pub fn from_g31_charts(p: Presentation, k: usize, charts: &[[F; 3]]) -> Result<Self> {
        if k == 0 || k > 3 {
            return Err(Error::OrderOutOfRange { order: k, min: 1, max: 3 });
        }
        let images = charts
            .iter()
            .map(|c| G31::from_array(c.clone())?.to_jet()?.truncate(k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, 1, k, images)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn images(&self) -> &[JetDiffeo<F>] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&JetDiffeo<F>> {
        Ok(&self.images[self.presentation.generator_index(name)?])
    }

    /// Generator-wise `g φ(γ) g⁻¹`.
    pub fn conjugate(&self, g: &JetDiffeo<F>) -> Result<Self> {
        let g_inv = g.invert()?;
        let images = self
            .images
            .iter()
            .map(|x| g.compose(x)?.compose(&g_inv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.presentation.clone(), self.l, self.k, images)
    }

    pub fn transport(&self, t: &Transport<F>) -> Result<Self> {
        let images = match t {
            Transport::Project(order) => self
                .images
                .iter()
                .map(|x| x.truncate(*order))
                .collect::<Result<Vec<_>>>()?,
            Transport::IncludeLinear(order) => {
                if *order == 0 {
                    return Err(Error::ZeroOrder);
                }
                self.images
                    .iter()
                    .map(|x| JetDiffeo::linear(&x.linear_part(), *order))
                    .collect::<Result<Vec<_>>>()?
            }
            Transport::Dilate(s) => self
                .images
                .iter()
                .map(|x| dilation_homotopy(s, x))
                .collect::<Result<Vec<_>>>()?,
        };
        let k = images.first().map_or(
            match t {
                Transport::Project(o) | Transport::IncludeLinear(o) => *o,
                Transport::Dilate(_) => self.k,
            },
            JetDiffeo::k,
        );
        Self::new(self.presentation.clone(), self.l, k, images)
    }
}

/// Conjugates a representation by `g`.
pub fn conjugate_rep<F: Scalar>(g: &JetDiffeo<F>, r: &Representation<F>) -> Result<Representation<F>> {
    r.conjugate(g)
}

/// Maps between representation spaces of different orders.
#[derive(Clone, Debug, PartialEq)]
pub enum Transport<F> {
    /// Truncate every image to the given order.
    Project(usize),
    /// Keep only linear parts and read them as jets of the given order.
    IncludeLinear(usize),
    /// Apply the dilation homotopy `h_t` generator-wise.
    Dilate(F),
}

pub fn transport_rep<F: Scalar>(r: &Representation<F>, t: &Transport<F>) -> Result<Representation<F>> {
    r.transport(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::scalar::{q, Rational};
    use crate::jetcore::Matrix;

    fn c(a1: i64, a2: i64, a0: i64) -> [Rational; 3] {
        [q(a1, 1), q(a2, 1), q(a0, 1)]
    }

    #[test]
    fn validation_examples() {
        let triv = Representation::<Rational>::trivial(Presentation::torus(), 2, 3).unwrap();
        assert_eq!(triv.images().len(), 2);
        assert!(Representation::from_g31_charts(Presentation::torus(), 3, &[c(1, 0, 1), c(0, 1, 1)]).is_ok());
        let two_t = JetDiffeo::linear(&Matrix::scalar(1, q(2, 1)), 1).unwrap();
        assert!(Representation::new(Presentation::circle(), 1, 1, vec![two_t]).is_ok());
        let err = Representation::from_g31_charts(Presentation::torus(), 3, &[c(1, 0, 2), c(1, 0, 1)]).unwrap_err();
        assert_eq!(err, Error::RelatorViolated { relator: 0 });
    }

    #[test]
    fn mixed_images_rejected() {
        let a = JetDiffeo::<Rational>::identity(1, 2).unwrap();
        let b = JetDiffeo::<Rational>::identity(1, 3).unwrap();
        assert!(validate_rep(&Presentation::torus(), 1, 2, &[a.clone(), b]).is_err());
        assert_eq!(
            validate_rep(&Presentation::torus(), 1, 2, &[a]).unwrap_err(),
            Error::UnassignedGenerator("y".into())
        );
    }

    #[test]
    fn conjugation_examples() {
        let r = Representation::from_g31_charts(Presentation::torus(), 3, &[c(1, 2, 1), c(3, -1, 1)]).unwrap();
        let id = JetDiffeo::identity(1, 3).unwrap();
        assert_eq!(r.conjugate(&id).unwrap(), r);
        let lam = q(3, 1);
        let d = JetDiffeo::dilation(1, 3, lam.clone()).unwrap();
        let conj = r.conjugate(&d).unwrap();
        let chart = crate::jetgroup::chart_g31(&conj.images()[0]).unwrap();
        assert_eq!(chart.a1, q(1, 3));
        assert_eq!(chart.a2, q(2, 9));
        let h = G31::from_array(c(2, 1, 5)).unwrap().to_jet().unwrap();
        let lhs = r.conjugate(&h).unwrap().conjugate(&d).unwrap();
        let rhs = r.conjugate(&d.compose(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transport_examples() {
        let lin = Representation::new(
            Presentation::circle(),
            1,
            1,
            vec![JetDiffeo::linear(&Matrix::scalar(1, q(2, 1)), 1).unwrap()],
        )
        .unwrap();
        let up = lin.transport(&Transport::IncludeLinear(3)).unwrap();
        assert_eq!(up.k(), 3);
        assert_eq!(up.transport(&Transport::Project(1)).unwrap(), lin);
        let r = Representation::from_g31_charts(Presentation::torus(), 3, &[c(1, 2, 1), c(3, -1, 1)]).unwrap();
        let zero = r.transport(&Transport::Dilate(q(0, 1))).unwrap();
        assert!(zero.images().iter().all(JetDiffeo::is_identity));
        let t = q(2, 7);
        let dil = r.transport(&Transport::Dilate(t.clone())).unwrap();
        let conj = r.conjugate(&JetDiffeo::dilation(1, 3, t.recip()).unwrap()).unwrap();
        assert_eq!(dil, conj);
    }
}
