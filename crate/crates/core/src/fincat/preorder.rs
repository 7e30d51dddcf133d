use super::FinCategory;
use crate::poset::FinPoset;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RetractionError {
    #[error("retraction has {got} entries, category has {expected} morphisms")]
    Length { got: usize, expected: usize },
    #[error("morphism {f} is sent to {to}, which is not an endomorphism of the base object")]
    NotEndo { f: usize, to: usize },
    #[error("identity of object {0} is not sent to the identity")]
    IdentityNotPreserved(usize),
    #[error("retraction is not functorial at {g} ∘ {f}")]
    NotFunctorial { g: usize, f: usize },
}

/// Checks that `retraction` (morphism ↦ endomorphism of `zero`) is a functor
/// onto the one-object category `Hom(zero, zero)`.
pub fn check_retraction(c: &FinCategory, zero: usize, retraction: &[usize]) -> Result<(), RetractionError> {
    if retraction.len() != c.num_morphisms() {
        return Err(RetractionError::Length { got: retraction.len(), expected: c.num_morphisms() });
    }
    for (f, &to) in retraction.iter().enumerate() {
        if to >= c.num_morphisms() || c.dom(to) != zero || c.cod(to) != zero {
            return Err(RetractionError::NotEndo { f, to });
        }
    }
    for x in 0..c.num_objects() {
        if retraction[c.id(x)] != c.id(zero) {
            return Err(RetractionError::IdentityNotPreserved(x));
        }
    }
    for f in 0..c.num_morphisms() {
        for &g in c.out_of(c.cod(f)) {
            if retraction[c.compose(g, f)] != c.compose(retraction[g], retraction[f]) {
                return Err(RetractionError::NotFunctorial { g, f });
            }
        }
    }
    Ok(())
}

/// The preorder `x ≤ y` iff some `f: x → y` has trivial image under the
/// retraction, and its quotient poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomPreorder {
    pub leq: Vec<Vec<bool>>,
    /// Class index of each object.
    pub class_of: Vec<usize>,
    /// Members of each class, classes ordered by least member.
    pub classes: Vec<Vec<usize>>,
    #[serde(skip)]
    pub quotient: FinPoset,
}

pub fn hom_preorder(c: &FinCategory, zero: usize, retraction: &[usize]) -> Result<HomPreorder, RetractionError> {
    check_retraction(c, zero, retraction)?;
    let n = c.num_objects();
    let one = c.id(zero);
    let leq: Vec<Vec<bool>> =
        (0..n).map(|x| (0..n).map(|y| c.hom(x, y).iter().any(|&f| retraction[f] == one)).collect()).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] == usize::MAX {
            let members: Vec<usize> = (x..n).filter(|&y| leq[x][y] && leq[y][x]).collect();
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members);
        }
    }
    let labels = classes.iter().map(|m| c.object_label(m[0]).to_string()).collect();
    let quotient =
        FinPoset::from_fn(labels, |i, j| leq[classes[i][0]][classes[j][0]]).expect("quotient of a preorder is a poset");
    Ok(HomPreorder { leq, class_of, classes, quotient })
}
