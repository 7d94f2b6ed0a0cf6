use alloc::format;
use alloc::vec::Vec;

use super::{Module, Submodule};
use crate::bitset::BitSet;
use crate::element::Element;
use crate::error::{Error, Result};

/// An `R`-linear map stored as a total value table.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    map: Vec<usize>,
    kernel: BitSet,
    surjective: bool,
}

impl ModuleHom {
    /// Extends the given images over the span of the listed elements,
    /// rejecting inconsistent or incomplete data.
    pub fn new(source: &Module, target: &Module, images: &[(Element, Element)]) -> Result<ModuleHom> {
        if source.scalars() != target.scalars() {
            return Err(Error::RingMismatch);
        }
        let pairs =
            images.iter().map(|(x, y)| Ok((source.index_of(x)?, target.index_of(y)?))).collect::<Result<Vec<_>>>()?;
        let scalars: Vec<usize> = if source.scalars().is_integers() {
            alloc::vec![usize::MAX]
        } else {
            (0..source.scalars().order()).collect()
        };
        let mut val = alloc::vec![usize::MAX; source.order()];
        val[0] = 0;
        let mut queue = alloc::vec![0usize];
        while let Some(x) = queue.pop() {
            for &(g, y) in &pairs {
                for &r in &scalars {
                    let (rg, ry) = if r == usize::MAX { (g, y) } else { (source.act_raw(r, g), target.act_raw(r, y)) };
                    let (x2, v2) = (source.add(x, rg), target.add(val[x], ry));
                    if val[x2] == usize::MAX {
                        val[x2] = v2;
                        queue.push(x2);
                    } else if val[x2] != v2 {
                        return Err(Error::NotAHomomorphism(format!(
                            "{} would map to both {} and {}",
                            source.element(x2),
                            target.element(val[x2]),
                            target.element(v2)
                        )));
                    }
                }
            }
        }
        if let Some(x) = val.iter().position(|&v| v == usize::MAX) {
            return Err(Error::NotAHomomorphism(format!(
                "the given elements do not generate {}; {} has no image",
                source,
                source.element(x)
            )));
        }
        ModuleHom::from_map(source, target, val)
    }

    /// Verifies additivity and linearity of a total value table.
    pub fn from_map(source: &Module, target: &Module, map: Vec<usize>) -> Result<ModuleHom> {
        if source.scalars() != target.scalars() {
            return Err(Error::RingMismatch);
        }
        if map.len() != source.order() || map.iter().any(|&v| v >= target.order()) {
            return Err(Error::NotAHomomorphism("value table has the wrong shape".into()));
        }
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "not additive at ({}, {})",
                        source.element(a),
                        source.element(b)
                    )));
                }
            }
        }
        if !source.scalars().is_integers() {
            for r in 0..source.scalars().order() {
                for x in 0..n {
                    if map[source.act_raw(r, x)] != target.act_raw(r, map[x]) {
                        return Err(Error::NotAHomomorphism(format!(
                            "not linear at ({}, {})",
                            source.scalars().element(r),
                            source.element(x)
                        )));
                    }
                }
            }
        }
        Ok(Self::trusted(source, target, map))
    }

    pub(crate) fn trusted(source: &Module, target: &Module, map: Vec<usize>) -> ModuleHom {
        let kernel = BitSet::from_indices(source.order(), (0..source.order()).filter(|&x| map[x] == 0));
        let hit = BitSet::from_indices(target.order(), map.iter().copied());
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            surjective: hit.len() == target.order(),
            map,
            kernel,
        }
    }

    pub fn identity(m: &Module) -> ModuleHom {
        Self::trusted(m, m, (0..m.order()).collect())
    }

    /// `L ↪ M`, with `L` regarded as a module.
    pub fn inclusion(l: &Submodule) -> ModuleHom {
        let src = Module::from_submodule(l);
        let map = l.elements();
        Self::trusted(&src, l.module(), map)
    }

    /// `M → M/L`.
    pub fn projection(m: &Module, l: &Submodule) -> Result<ModuleHom> {
        Ok(m.quotient(l)?.1)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_set(&self.source, self.kernel.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// `f(N)`.
    pub fn image(&self, n: &Submodule) -> Result<Submodule> {
        if n.module() != &self.source {
            return Err(Error::InvalidSubmodule(format!("{n} is not in the source")));
        }
        Ok(Submodule::from_set(&self.target, self.image_set(n.set())))
    }

    pub(crate) fn image_set(&self, n: &BitSet) -> BitSet {
        BitSet::from_indices(self.target.order(), n.iter().map(|x| self.map[x]))
    }

    /// `f⁻¹(N')`.
    pub fn preimage(&self, n: &Submodule) -> Result<Submodule> {
        if n.module() != &self.target {
            return Err(Error::InvalidSubmodule(format!("{n} is not in the target")));
        }
        Ok(Submodule::from_set(&self.source, self.preimage_set(n.set())))
    }

    pub(crate) fn preimage_set(&self, n: &BitSet) -> BitSet {
        BitSet::from_indices(self.source.order(), (0..self.source.order()).filter(|&x| n.contains(self.map[x])))
    }
}
