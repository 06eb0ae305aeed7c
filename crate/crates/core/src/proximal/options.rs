use std::fmt;

/// How continuity of a binary operation is tested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ProductMode {
    /// All pairs of rectangles `A₁×B₁`, `A₂×B₂`.
    #[default]
    Rectangle,
    /// All subsets of the product under the product relation; tiny carriers only.
    FullProduct,
}

impl ProductMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ProductMode::Rectangle => "rectangle",
            ProductMode::FullProduct => "full",
        }
    }
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which scan to prefer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Exhaustive within the caps, pointwise beyond them when every relation
    /// involved is point-generated.
    #[default]
    Auto,
    Exhaustive,
    /// Singleton scan; only sound for point-generated relations.
    Pointwise,
}

/// Largest carrier for which FullProduct mode is allowed.
pub const FULL_PRODUCT_CAP: usize = 3;
/// Default carrier bound for rectangle scans.
pub const RECTANGLE_CAP: usize = 6;
/// Hard ceiling for rectangle scans even with raised caps.
pub const RECTANGLE_CAP_UNSAFE: usize = 7;
/// Carrier bound for exhaustive subset-pair scans.
pub const UNARY_CAP: usize = 12;
/// Carrier bound for closed-set enumeration.
pub const CLOSED_SET_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub mode: ProductMode,
    pub rectangle_cap: usize,
    pub unary_cap: usize,
    pub closed_set_cap: usize,
    pub strategy: Strategy,
    pub parallel: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            mode: ProductMode::Rectangle,
            rectangle_cap: RECTANGLE_CAP,
            unary_cap: UNARY_CAP,
            closed_set_cap: CLOSED_SET_CAP,
            strategy: Strategy::Auto,
            parallel: true,
        }
    }
}

impl ScanOptions {
    pub fn with_mode(mut self, mode: ProductMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Raise the rectangle cap to its ceiling.
    pub fn unsafe_caps(mut self) -> Self {
        self.rectangle_cap = RECTANGLE_CAP_UNSAFE;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}
