//! Certified generators of the automorphism groups and words in them.

mod generator;
mod word;

pub use generator::{
    certify_twist, Candidate, Certificate, Generator, SphereTwist, TorusFactor, TorusMoebius, TorusTwist, Witness,
};
pub use word::AutWord;

use crate::error::Result;
use crate::exactalg::OrderedField;
use crate::surfaces::{Jet, Point};

pub fn apply_point<F: OrderedField>(w: &AutWord<F>, p: &Point<F>) -> Result<Point<F>> {
    w.apply_point(p)
}

pub fn apply_jet<F: OrderedField>(w: &AutWord<F>, j: &Jet<F>) -> Result<Jet<F>> {
    w.apply_jet(j)
}

pub fn word_inverse<F: OrderedField>(w: &AutWord<F>) -> AutWord<F> {
    w.inverse()
}

pub fn jacobian_at<F: OrderedField>(w: &AutWord<F>, p: &Point<F>) -> Result<Vec<Vec<F>>> {
    w.jacobian_at(p)
}

#[cfg(test)]
mod tests;
