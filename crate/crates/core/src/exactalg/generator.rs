//! Process-wide registry of named generators.
//!
//! Every generator owns a fixed slot in the dense exponent vectors used by
//! [`Monomial`](super::Monomial). The registry starts with the built-in
//! symbols below and can be extended at runtime; slots are never reused or
//! reordered, so a monomial built earlier stays valid for the whole process.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use super::AlgError;

/// Upper bound on the number of distinct generators (and the exponent vector width).
pub const MAX_GENERATORS: usize = 32;

const BUILTIN: [&str; 21] = [
    "sqrt_v", "q", "z", "w", "z_1", "z_2", "z_3", "z_4", "zeta", "zeta_p", "zeta_pp", "alpha", "beta", "c", "d", "u_a",
    "u_b", "u_c", "u_d", "u_e", "u_f",
];

struct Registry {
    names: Vec<&'static str>,
    index: HashMap<&'static str, u8>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let names: Vec<&'static str> = BUILTIN.to_vec();
        let index = names.iter().enumerate().map(|(i, n)| (*n, i as u8)).collect();
        RwLock::new(Registry { names, index })
    })
}

/// A named symbol, identified by its slot in the registry.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub const SQRT_V: Generator = Generator(0);
    pub const Q: Generator = Generator(1);
    pub const Z: Generator = Generator(2);
    pub const W: Generator = Generator(3);
    pub const ZETA: Generator = Generator(8);
    pub const ZETA_P: Generator = Generator(9);
    pub const ZETA_PP: Generator = Generator(10);
    pub const ALPHA: Generator = Generator(11);
    pub const BETA: Generator = Generator(12);
    pub const C: Generator = Generator(13);
    pub const D: Generator = Generator(14);
    pub const U_A: Generator = Generator(15);
    pub const U_B: Generator = Generator(16);
    pub const U_C: Generator = Generator(17);
    pub const U_D: Generator = Generator(18);
    pub const U_E: Generator = Generator(19);
    pub const U_F: Generator = Generator(20);

    /// Looks up `name`, registering it if it is new.
    pub fn new(name: &str) -> Result<Generator, AlgError> {
        if let Some(g) = Self::lookup(name) {
            return Ok(g);
        }
        if !is_identifier(name) {
            return Err(AlgError::InvalidGeneratorName(name.to_string()));
        }
        let mut reg = registry().write().expect("generator registry poisoned");
        // Another thread may have won the race between the read and the write lock.
        if let Some(&i) = reg.index.get(name) {
            return Ok(Generator(i));
        }
        if reg.names.len() >= MAX_GENERATORS {
            return Err(AlgError::RegistryFull(name.to_string()));
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let slot = reg.names.len() as u8;
        reg.names.push(leaked);
        reg.index.insert(leaked, slot);
        Ok(Generator(slot))
    }

    pub fn lookup(name: &str) -> Option<Generator> {
        let reg = registry().read().expect("generator registry poisoned");
        reg.index.get(name).map(|&i| Generator(i))
    }

    /// The row parameter `z_i` (1-based).
    pub fn z(i: usize) -> Generator {
        Self::new(&format!("z_{i}")).expect("generator registry exhausted")
    }

    pub fn name(self) -> &'static str {
        registry().read().expect("generator registry poisoned").names[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Generator {
        debug_assert!(i < MAX_GENERATORS);
        Generator(i as u8)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
