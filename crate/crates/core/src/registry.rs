//! Name-keyed registry of boxed strategy builders.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

type Builder<T, P> = Box<dyn Fn(&P) -> Result<Box<T>> + Send + Sync>;

/// Maps a strategy name to a constructor taking parameters `P`.
pub struct Registry<T: ?Sized, P> {
    kind: &'static str,
    builders: BTreeMap<&'static str, Builder<T, P>>,
}

impl<T: ?Sized, P> Registry<T, P> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            builders: BTreeMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &'static str, builder: F) -> &mut Self
    where
        F: Fn(&P) -> Result<Box<T>> + Send + Sync + 'static,
    {
        self.builders.insert(name, Box::new(builder));
        self
    }

    pub fn build(&self, name: &str, params: &P) -> Result<Box<T>> {
        let builder = self
            .builders
            .get(name)
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
            })?;
        builder(params)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.builders.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.builders.keys().copied()
    }
}
