use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to a variable table; every polynomial carries one.
pub type Ring = Arc<VarTable>;

/// Ordered variable names of a polynomial ring.
///
/// The first `main` names form the variable block, the remaining names the
/// parameter block. Block orders rank the variable block above the parameter
/// block, so a comprehensive Gröbner system over this ring can read parameter
/// conditions off leading coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    main: usize,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    /// A ring whose variables all belong to the variable block.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        Self::parametric(names, &[] as &[&str])
    }

    /// A ring with the given variable block followed by the parameter block.
    pub fn parametric<S: AsRef<str>, T: AsRef<str>>(vars: &[S], params: &[T]) -> Result<Ring> {
        let names: Vec<String> = vars
            .iter()
            .map(|s| s.as_ref().to_string())
            .chain(params.iter().map(|s| s.as_ref().to_string()))
            .collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::InvalidVarTable(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarTable(format!("duplicate variable `{n}`")));
            }
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::InvalidVarTable("too many variables".into()));
        }
        Ok(Arc::new(VarTable {
            names,
            main: vars.len(),
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_or_err(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Number of variables in the variable (main) block.
    pub fn main_len(&self) -> usize {
        self.main
    }

    pub fn is_param(&self, i: usize) -> bool {
        i >= self.main
    }

    pub fn var_names(&self) -> &[String] {
        &self.names[..self.main]
    }

    pub fn param_names(&self) -> &[String] {
        &self.names[self.main..]
    }

    /// The parameter block as a ring of its own.
    pub fn param_ring(&self) -> Ring {
        Arc::new(VarTable {
            names: self.names[self.main..].to_vec(),
            main: self.names.len() - self.main,
        })
    }

    /// Appends fresh variable names at the end of the variable block.
    pub fn with_extra_vars<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        let mut vars: Vec<String> = self.var_names().to_vec();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        VarTable::parametric(&vars, self.param_names())
    }

    /// A name not yet used in this table, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.index_of(n).is_none())
            .expect("unbounded search")
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarTable{:?}|{:?}", self.var_names(), self.param_names())
    }
}

/// Index map sending variables of `from` to variables of `to`, matched by name.
pub(crate) fn index_map(from: &VarTable, to: &VarTable) -> Vec<Option<usize>> {
    from.names.iter().map(|n| to.index_of(n)).collect()
}
