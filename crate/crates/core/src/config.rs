/// Resource limits and the seed for randomized factoring.
///
/// None of the values affect results, only whether a computation is
/// attempted: factorizations are canonicalized, so the seed never leaks
/// into output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest polynomial degree that may be materialized.
    pub degree_cap: usize,
    /// Seed for equal-degree splitting.
    pub seed: u64,
    /// Largest absolute extension degree built while enumerating preimages.
    pub ambient_cap: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { degree_cap: 20_000, seed: 0x5eed, ambient_cap: 16 }
    }
}

impl Config {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }
}
