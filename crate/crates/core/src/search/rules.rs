//! Necessary conditions on supports, each a consequence of a proved bound.

use super::universe::Universe;
use crate::registry::Registry;

pub trait PruneRule: Send + Sync {
    fn name(&self) -> &'static str;

    /// False only when no element of H has exactly this support.
    fn admits(&self, mask: u128) -> bool;
}

/// At least `n` monomials of the top degree.
struct TopDegree {
    top: u128,
    need: u32,
}

impl PruneRule for TopDegree {
    fn name(&self) -> &'static str {
        "top-degree"
    }

    fn admits(&self, mask: u128) -> bool {
        (mask & self.top).count_ones() >= self.need
    }
}

/// A nonconstant pure term in every variable.
struct PureTerms {
    per_var: Vec<u128>,
}

impl PruneRule for PureTerms {
    fn name(&self) -> &'static str {
        "pure-terms"
    }

    fn admits(&self, mask: u128) -> bool {
        self.per_var.iter().all(|&m| mask & m != 0)
    }
}

struct Face {
    size: usize,
    /// Monomials using only the face variables, split by degree.
    by_degree: Vec<u128>,
    mixed: u128,
    pure: u128,
}

/// Setting the variables outside a proper subset to zero gives an element
/// of H in fewer variables; its support must pass the same counts.
struct Restriction {
    faces: Vec<Face>,
}

impl Restriction {
    fn admits_face(face: &Face, mask: u128) -> bool {
        let Some(e) = (1..face.by_degree.len())
            .rev()
            .find(|&e| mask & face.by_degree[e] != 0)
        else {
            return false;
        };
        let top = (mask & face.by_degree[e]).count_ones() as usize;
        if top < face.size {
            return false;
        }
        if face.size == 2 {
            let total: u32 = face.by_degree.iter().map(|m| (mask & m).count_ones()).sum();
            let e = e as u32;
            return total >= (e + 3).div_ceil(2)
                && (mask & face.mixed).count_ones() >= (e - 1).div_ceil(2)
                && (mask & face.pure).count_ones() >= 2;
        }
        true
    }
}

impl PruneRule for Restriction {
    fn name(&self) -> &'static str {
        "restriction"
    }

    fn admits(&self, mask: u128) -> bool {
        self.faces.iter().all(|f| Self::admits_face(f, mask))
    }
}

fn restriction(u: &Universe) -> Restriction {
    let n = u.n();
    let mut faces = Vec::new();
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as usize;
        if size < 2 || size >= n {
            continue;
        }
        let inside = |m: &crate::poly::Monomial| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || subset >> i & 1 == 1)
        };
        let within = u.mask_where(inside);
        let by_degree = (0..=u.d()).map(|k| within & u.degree_mask(k)).collect();
        faces.push(Face {
            size,
            by_degree,
            mixed: within & u.mask_where(|m| m.is_mixed()),
            pure: within & u.mask_where(|m| m.is_pure() && !m.is_one()),
        });
    }
    Restriction { faces }
}

pub const DEFAULT_RULES: [&str; 3] = ["top-degree", "pure-terms", "restriction"];

pub fn prune_rules() -> Registry<dyn PruneRule, Universe> {
    let mut reg: Registry<dyn PruneRule, Universe> = Registry::new("prune rule");
    reg.register("top-degree", |u: &Universe| {
        Ok(Box::new(TopDegree {
            top: u.degree_mask(u.d()),
            need: u.n() as u32,
        }))
    });
    reg.register("pure-terms", |u: &Universe| {
        let per_var = (0..u.n())
            .map(|i| u.mask_where(|m| m.is_pure() && m.exponents()[i] > 0))
            .collect();
        Ok(Box::new(PureTerms { per_var }))
    });
    reg.register("restriction", |u: &Universe| Ok(Box::new(restriction(u))));
    reg
}
