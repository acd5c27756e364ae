//! Resource limits. Exceeding a cap is a hard error, never silent truncation.

/// Limits applied by constructions that can blow up in space or time.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Maximum number of states produced by product/subset constructions.
    pub product_states: usize,
    /// Maximum number of elements in a transition monoid.
    pub monoid_size: usize,
    /// Maximum word length accepted by the enumeration oracle.
    pub enum_max_len: usize,
    /// Maximum number of words the enumeration oracle will collect.
    pub enum_words: usize,
    /// Maximum horizon for partial Cesàro averages.
    pub partial_horizon: u32,
    /// Maximum approximant level for the sandwich construction.
    pub level_max: usize,
    /// Maximum order of a constructed group.
    pub group_order: usize,
    /// Maximum number of words stored in one explicit finite-set atom.
    pub finite_atom_words: usize,
}

impl Caps {
    pub const fn standard() -> Self {
        Caps {
            product_states: 1_000_000,
            monoid_size: 100_000,
            enum_max_len: 20,
            enum_words: 1 << 21,
            partial_horizon: 1 << 16,
            level_max: 20,
            group_order: 10_000,
            finite_atom_words: 1 << 21,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::standard()
    }
}
