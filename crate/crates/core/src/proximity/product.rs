use crate::error::{Error, Result};
use crate::ground::{GroundSet, Mask, Subset, MAX_GROUND};

use super::{ProximityRelation, RelationKind, Representation};

/// Nearness on `X × Y` built from the factor relations.
///
/// Rectangles are near iff both factor pairs are near. For arbitrary subsets,
/// point-generated factors give the point product (`(a, b) ~ (c, d)` iff
/// `a ~ c` and `b ~ d`); otherwise nearness of both projections is used.
/// The two rules agree on rectangles.
#[derive(Clone, Debug)]
pub struct ProductRelation {
    left: ProximityRelation,
    right: ProximityRelation,
}

pub fn product_relation(left: &ProximityRelation, right: &ProximityRelation) -> ProductRelation {
    ProductRelation {
        left: left.clone(),
        right: right.clone(),
    }
}

impl ProductRelation {
    pub fn left(&self) -> &ProximityRelation {
        &self.left
    }

    pub fn right(&self) -> &ProximityRelation {
        &self.right
    }

    pub fn is_point_generated(&self) -> bool {
        self.left.is_point_generated() && self.right.is_point_generated()
    }

    pub fn near_rectangles(&self, a1: &Subset, b1: &Subset, a2: &Subset, b2: &Subset) -> Result<bool> {
        Ok(self.left.near(a1, a2)? && self.right.near(b1, b2)?)
    }

    /// Nearness of two subsets of `X × Y` given as element-index pairs.
    pub fn near_pairs(&self, s: &[(usize, usize)], t: &[(usize, usize)]) -> Result<bool> {
        let (nx, ny) = (self.left.ground().len(), self.right.ground().len());
        for &(x, y) in s.iter().chain(t) {
            if x >= nx || y >= ny {
                return Err(Error::IndexOutOfRange {
                    index: if x >= nx { x } else { y },
                    size: if x >= nx { nx } else { ny },
                });
            }
        }
        if let (Some(mx), Some(my)) = (self.left.tolerance(), self.right.tolerance()) {
            return Ok(s
                .iter()
                .any(|&(a, b)| t.iter().any(|&(c, d)| mx.related(a, c) && my.related(b, d))));
        }
        let proj = |p: &[(usize, usize)]| -> (Mask, Mask) {
            p.iter().fold((0, 0), |(x, y), &(a, b)| (x | 1 << a, y | 1 << b))
        };
        let (sx, sy) = proj(s);
        let (tx, ty) = proj(t);
        Ok(self.left.near_masks(sx, tx) && self.right.near_masks(sy, ty))
    }

    /// Product ground set; pair `(a, b)` has index `a * |Y| + b` and label
    /// `(a,b)`.
    pub fn ground(&self) -> Result<GroundSet> {
        product_ground(self.left.ground(), self.right.ground())
    }

    /// Materialise as a relation on the product ground set.
    pub fn to_relation(&self) -> Result<ProximityRelation> {
        let ground = self.ground()?;
        let name = format!("{} x {}", self.left.name(), self.right.name());
        let repr = match (self.left.tolerance(), self.right.tolerance()) {
            (Some(mx), Some(my)) => Representation::PointTolerance(mx.product(my)),
            _ => Representation::Product(Box::new(self.left.clone()), Box::new(self.right.clone())),
        };
        Ok(ProximityRelation::from_parts(ground, repr, RelationKind::Product, name))
    }
}

pub(crate) fn product_ground(x: &GroundSet, y: &GroundSet) -> Result<GroundSet> {
    let size = x.len() * y.len();
    if size > MAX_GROUND {
        return Err(Error::ProductTooLarge { size, max: MAX_GROUND });
    }
    GroundSet::new(
        x.labels()
            .iter()
            .flat_map(|a| y.labels().iter().map(move |b| format!("({a},{b})"))),
    )
}
