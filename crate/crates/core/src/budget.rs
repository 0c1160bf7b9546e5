//! Search budgets. Every bounded search names the budget it exhausted, so
//! an UNKNOWN outcome is always attributable.

/// Caps for the various bounded searches. Defaults are sized to the
/// desk-scale examples shipped with the crate.
#[derive(Debug, Clone)]
pub struct Budgets {
    /// Maximum congruence-class size for presented monoids.
    pub class_cap: usize,
    /// Extra length allowed beyond |u|+|v| when searching common multiples.
    pub multiple_slack: usize,
    /// Maximum derivation steps for group-triviality search (per direction).
    pub group_radius: usize,
    /// State cap for group-triviality search.
    pub group_states: usize,
    /// Reachable-state cap for exhaustive multifraction reduction.
    pub search_states: usize,
    /// Step cap for a single reduction trace.
    pub trace_cap: usize,
    /// State cap for loop-contraction search.
    pub homotopy_states: usize,
    /// Node cap for zigzag enumeration.
    pub zigzag_nodes: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            class_cap: 100_000,
            multiple_slack: 4,
            group_radius: 16,
            group_states: 400_000,
            search_states: 1_000_000,
            trace_cap: 64,
            homotopy_states: 100_000,
            zigzag_nodes: 5_000_000,
        }
    }
}

impl Budgets {
    /// Applies overrides from a spec string: either a bare integer (scales
    /// the two state caps) or comma-separated `key=value` pairs with keys
    /// `class`, `slack`, `radius`, `group-states`, `states`, `trace`,
    /// `homotopy`, `zigzag`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<usize>() {
            self.search_states = n;
            self.homotopy_states = n;
            self.group_states = n;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("bad budget entry `{part}`"))?;
            let n: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("bad budget value `{value}`"))?;
            match key.trim() {
                "class" => self.class_cap = n,
                "slack" => self.multiple_slack = n,
                "radius" => self.group_radius = n,
                "group-states" => self.group_states = n,
                "states" => self.search_states = n,
                "trace" => self.trace_cap = n,
                "homotopy" => self.homotopy_states = n,
                "zigzag" => self.zigzag_nodes = n,
                other => return Err(format!("unknown budget key `{other}`")),
            }
        }
        Ok(self)
    }

    /// Reads overrides from the `GCDMF_BUDGET` environment variable.
    pub fn from_env() -> Budgets {
        match std::env::var("GCDMF_BUDGET") {
            Ok(spec) => Budgets::default()
                .with_overrides(&spec)
                .unwrap_or_else(|_| Budgets::default()),
            Err(_) => Budgets::default(),
        }
    }
}
