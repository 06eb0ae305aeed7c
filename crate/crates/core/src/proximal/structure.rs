use std::fmt;

use crate::algebra::{FiniteGroup, FiniteModule, FiniteRing};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::proximity::ProximityRelation;

use super::options::{ProductMode, ScanOptions, FULL_PRODUCT_CAP};
use super::scan::Carrier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Group,
    Ring,
    Field,
    Module,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Group => "group",
            StructureKind::Ring => "ring",
            StructureKind::Field => "field",
            StructureKind::Module => "module",
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Algebra {
    Group(FiniteGroup),
    Ring(FiniteRing),
    Module(FiniteModule),
}

/// An algebra together with one proximity relation per carrier.
#[derive(Clone)]
pub struct ProximalStructure {
    pub(crate) kind: StructureKind,
    pub(crate) name: String,
    pub(crate) algebra: Algebra,
    /// `[carrier]` for groups and rings, `[ring, module carrier]` for modules.
    pub(crate) carriers: Vec<Carrier>,
    pub(crate) options: ScanOptions,
}

impl fmt::Debug for ProximalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProximalStructure")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .field(
                "relations",
                &self.carriers.iter().map(|c| c.rel.name()).collect::<Vec<_>>(),
            )
            .field("options", &self.options)
            .finish()
    }
}

fn matching(ground: &GroundSet, rel: &ProximityRelation, what: &str) -> Result<()> {
    let found = rel.ground();
    if found.len() != ground.len() {
        return Err(Error::CarrierMismatch(format!(
            "{what} has {} elements but the relation has {}",
            ground.len(),
            found.len()
        )));
    }
    if let Some(i) = (0..ground.len()).find(|&i| ground.label(i) != found.label(i)) {
        return Err(Error::CarrierMismatch(format!(
            "{what} element {i} is `{}` but the relation has `{}`",
            ground.label(i),
            found.label(i)
        )));
    }
    Ok(())
}

fn full_product_allowed(options: &ScanOptions, sizes: &[usize]) -> Result<()> {
    let largest = sizes.iter().copied().max().unwrap_or(0);
    if options.mode == ProductMode::FullProduct && largest > FULL_PRODUCT_CAP {
        return Err(Error::FullProductTooLarge(largest));
    }
    Ok(())
}

impl ProximalStructure {
    pub fn group(group: FiniteGroup, rel: ProximityRelation, options: ScanOptions) -> Result<Self> {
        matching(group.ground(), &rel, "group")?;
        full_product_allowed(&options, &[group.len()])?;
        Ok(ProximalStructure {
            kind: StructureKind::Group,
            name: format!("{} / {}", group.name(), rel.name()),
            algebra: Algebra::Group(group),
            carriers: vec![Carrier::new(rel)],
            options,
        })
    }

    /// `kind` is [`StructureKind::Ring`] or [`StructureKind::Field`]; the
    /// latter requires every nonzero element to be invertible.
    pub fn ring(kind: StructureKind, ring: FiniteRing, rel: ProximityRelation, options: ScanOptions) -> Result<Self> {
        match kind {
            StructureKind::Ring => {}
            StructureKind::Field => {
                if let Some(bad) = non_invertible(&ring) {
                    return Err(Error::NotAField(ring.ground().label(bad).to_string()));
                }
            }
            other => {
                return Err(Error::Document(format!(
                    "a ring structure cannot have kind `{}`",
                    other.as_str()
                )))
            }
        }
        matching(ring.ground(), &rel, "ring")?;
        full_product_allowed(&options, &[ring.len()])?;
        Ok(ProximalStructure {
            kind,
            name: format!("{} / {}", ring.name(), rel.name()),
            algebra: Algebra::Ring(ring),
            carriers: vec![Carrier::new(rel)],
            options,
        })
    }

    pub fn module(
        module: FiniteModule,
        ring_rel: ProximityRelation,
        carrier_rel: ProximityRelation,
        options: ScanOptions,
    ) -> Result<Self> {
        matching(module.ring().ground(), &ring_rel, "ring")?;
        matching(module.carrier(), &carrier_rel, "module")?;
        full_product_allowed(&options, &[module.ring().len(), module.carrier().len()])?;
        Ok(ProximalStructure {
            kind: StructureKind::Module,
            name: format!("{} / {}, {}", module.name(), ring_rel.name(), carrier_rel.name()),
            algebra: Algebra::Module(module),
            carriers: vec![Carrier::new(ring_rel), Carrier::new(carrier_rel)],
            options,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_options(self, options: ScanOptions) -> Result<Self> {
        let sizes: Vec<usize> = self.carriers.iter().map(|c| c.n).collect();
        full_product_allowed(&options, &sizes)?;
        Ok(ProximalStructure { options, ..self })
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn options(&self) -> &ScanOptions {
        &self.options
    }

    pub fn ring_algebra(&self) -> Option<&FiniteRing> {
        match &self.algebra {
            Algebra::Ring(r) => Some(r),
            Algebra::Module(m) => Some(m.ring()),
            Algebra::Group(_) => None,
        }
    }

    pub fn group_algebra(&self) -> Option<&FiniteGroup> {
        match &self.algebra {
            Algebra::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn module_algebra(&self) -> Option<&FiniteModule> {
        match &self.algebra {
            Algebra::Module(m) => Some(m),
            _ => None,
        }
    }

    /// The relation on the (first) carrier.
    pub fn relation(&self) -> &ProximityRelation {
        &self.carriers[0].rel
    }

    /// The relation on the module carrier, for module structures.
    pub fn carrier_relation(&self) -> Option<&ProximityRelation> {
        match self.kind {
            StructureKind::Module => Some(&self.carriers[1].rel),
            _ => None,
        }
    }
}

pub(crate) fn non_invertible(ring: &FiniteRing) -> Option<usize> {
    (0..ring.len()).find(|&x| x != ring.zero() && ring.inverse(x).is_none())
}
