use crate::error::{Error, Result};

/// Size caps for partition enumeration.
///
/// `enumeration` bounds the unrestricted lattices `NC(n)` and `BNC(chi)`,
/// which grow like Catalan numbers. `classes` bounds the family-restricted
/// enumerations behind cumulants of sums and products; those prune blocks
/// that mix the two pairs and stay far smaller than the full lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration: usize,
    pub classes: usize,
}

impl Limits {
    pub const DEFAULT_ENUMERATION: usize = 14;
    pub const DEFAULT_CLASSES: usize = 16;

    /// Raise both caps so that neither is below `cap`.
    pub fn raised_to(self, cap: usize) -> Self {
        Limits {
            enumeration: self.enumeration.max(cap),
            classes: self.classes.max(cap),
        }
    }

    pub(crate) fn check_enumeration(&self, size: usize) -> Result<()> {
        if size > self.enumeration {
            Err(Error::CapExceeded {
                requested: size,
                cap: self.enumeration,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_classes(&self, size: usize) -> Result<()> {
        if size > self.classes {
            Err(Error::CapExceeded {
                requested: size,
                cap: self.classes,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: Self::DEFAULT_ENUMERATION,
            classes: Self::DEFAULT_CLASSES,
        }
    }
}
