//! Recognizing partition lattices.

mod firby;
mod yoon;

pub use firby::{
    bounding_elements, check_firby, check_firby_with, one_points, one_points_with, single_collections, FiniteSpace,
    FirbyCaps, FirbyError, FirbyOptions, FirbyReport, OnePoint, SingleCollectionRule,
};
pub use yoon::{check_yoon, YoonVerdict};
