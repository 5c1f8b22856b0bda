//! Central extensions `0 → Z/n → Γ → A → 1` and their 2-cocycles.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{is_coboundary, CoeffModule, Cochain};
use crate::error::{Error, Result};
use crate::groups::{builtin, verify_homomorphism, Elem, FiniteGroup, GroupHom, GroupSpec};

/// A surjection `Γ → A` with cyclic central kernel `Z/n` and a normalized
/// set-theoretic section.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    name: String,
    proj: GroupHom,
    /// `kernel_embed[k] = z^k` for the chosen kernel generator `z`.
    kernel_embed: Vec<Elem>,
    /// Inverse of `kernel_embed` on Γ, `None` off the kernel.
    kernel_index: Vec<Option<u32>>,
    section: Vec<Elem>,
}

impl CentralExtension {
    /// Validates the data and picks the default section: the least element
    /// id in each fibre (which is the identity over `e_A`).
    pub fn new(name: impl Into<String>, proj: GroupHom, kernel_gen: Elem) -> Result<Self> {
        let total = proj.source().clone();
        let base = proj.target().clone();
        if !proj.is_surjective() {
            return Err(Error::Extension("projection is not surjective".into()));
        }
        if kernel_gen >= total.order() {
            return Err(Error::Extension(format!("kernel generator {kernel_gen} is not an element")));
        }
        let kernel = proj.kernel();
        let n = total.element_order(kernel_gen);
        if kernel.len() != n || proj.apply(kernel_gen) != base.identity() {
            return Err(Error::Extension(format!(
                "element {kernel_gen} does not generate the kernel of order {}",
                kernel.len()
            )));
        }
        if total.order() != n * base.order() {
            return Err(Error::Extension("|Γ| ≠ n·|A|".into()));
        }
        if !total.is_central(kernel_gen) {
            return Err(Error::Extension("kernel is not central".into()));
        }
        let mut kernel_embed = Vec::with_capacity(n);
        let mut kernel_index = vec![None; total.order()];
        let mut z = total.identity();
        for k in 0..n {
            kernel_embed.push(z);
            kernel_index[z] = Some(k as u32);
            z = total.mul(z, kernel_gen);
        }
        let mut section = vec![usize::MAX; base.order()];
        for g in total.elements().rev() {
            section[proj.apply(g)] = g;
        }
        Ok(Self {
            name: name.into(),
            proj,
            kernel_embed,
            kernel_index,
            section,
        })
    }

    /// Replaces the section; it must be normalized and split the projection.
    pub fn with_section(mut self, section: Vec<Elem>) -> Result<Self> {
        if section.len() != self.base().order() {
            return Err(Error::Extension(format!(
                "section has {} entries, base has order {}",
                section.len(),
                self.base().order()
            )));
        }
        if section[0] != self.total().identity() {
            return Err(Error::Extension("section is not normalized".into()));
        }
        for (a, &s) in section.iter().enumerate() {
            if s >= self.total().order() || self.proj.apply(s) != a {
                return Err(Error::Extension(format!("section value over {a} lies in the wrong fibre")));
            }
        }
        self.section = section;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        self.proj.source()
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        self.proj.target()
    }

    pub fn proj(&self) -> &GroupHom {
        &self.proj
    }

    /// Order `n` of the kernel.
    pub fn modulus(&self) -> u32 {
        self.kernel_embed.len() as u32
    }

    pub fn kernel_embed(&self) -> &[Elem] {
        &self.kernel_embed
    }

    pub fn section(&self) -> &[Elem] {
        &self.section
    }

    /// The residue `k` with `g = z^k`, if `g` lies in the kernel.
    pub fn kernel_coordinate(&self, g: Elem) -> Option<u32> {
        self.kernel_index.get(g).copied().flatten()
    }

    /// All normalized sections, in lexicographic order of fibre choices.
    pub fn all_sections(&self) -> Vec<Vec<Elem>> {
        let fibres: Vec<Vec<Elem>> = self
            .base()
            .elements()
            .map(|a| {
                if a == self.base().identity() {
                    vec![self.total().identity()]
                } else {
                    self.total().elements().filter(|&g| self.proj.apply(g) == a).collect()
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for fibre in &fibres {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    fibre.iter().map(move |&g| {
                        let mut s = prefix.clone();
                        s.push(g);
                        s
                    })
                })
                .collect();
        }
        out
    }
}

/// Names accepted by [`builtin_extension`].
pub const BUILTIN_EXTENSIONS: [&str; 5] = ["Z4-Z2", "Q8-V4", "D4-V4", "GL2F3-S4", "V4-Z2"];

/// One of the built-in extensions; names are case-insensitive and may use
/// `Z/4`, `->` or `→`.
pub fn builtin_extension(name: &str) -> Result<CentralExtension> {
    let key = name
        .to_ascii_uppercase()
        .replace('/', "")
        .replace("->", "-")
        .replace('→', "-");
    let (canonical, proj) = match key.as_str() {
        "Z4-Z2" => ("Z4-Z2", builtin::cyclic_reduction(4, 2)?),
        "Q8-V4" => ("Q8-V4", builtin::q8_to_v4()),
        "D4-V4" => ("D4-V4", builtin::d4_to_v4()),
        "GL2F3-S4" => ("GL2F3-S4", builtin::gl2f3_to_s4()),
        "V4-Z2" => ("V4-Z2", builtin::v4_first_factor()),
        _ => return Err(Error::InvalidArgument(format!("unknown extension `{name}`"))),
    };
    let kernel = proj.kernel();
    let gen = kernel
        .iter()
        .copied()
        .find(|&g| proj.source().element_order(g) == kernel.len())
        .ok_or_else(|| Error::Extension("kernel is not cyclic".into()))?;
    CentralExtension::new(canonical, proj, gen)
}

/// `ε(x, y) = σ(x)σ(y)σ(xy)^{-1}` read in the kernel.
pub fn extension_cocycle(ext: &CentralExtension) -> Result<Cochain> {
    let total = ext.total();
    let base = ext.base().clone();
    let s = ext.section();
    let coeff = CoeffModule::trivial(ext.modulus(), &base);
    let mut err = None;
    let eps = Cochain::from_fn(base.clone(), coeff, 2, |xy| {
        let (x, y) = (xy[0], xy[1]);
        let g = total.mul(total.mul(s[x], s[y]), total.inv(s[base.mul(x, y)]));
        ext.kernel_coordinate(g).unwrap_or_else(|| {
            err.get_or_insert_with(|| {
                Error::Extension(format!("σ({x})σ({y})σ({x}{y})⁻¹ is outside the kernel"))
            });
            0
        })
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(eps),
    }
}

/// A commutative square `f = proj ∘ f̃` with `f: Ã → A`, `f̃: Ã → Γ`.
#[derive(Debug, Clone)]
pub struct Lift {
    pub f: GroupHom,
    pub f_tilde: GroupHom,
}

impl Lift {
    /// `Ã = Γ`, `f = proj`, `f̃ = id`.
    pub fn default_for(ext: &CentralExtension) -> Self {
        Self {
            f: ext.proj().clone(),
            f_tilde: GroupHom::identity(ext.total().clone()),
        }
    }
}

/// `γ(g) = σ(f(g)) · f̃(g)^{-1}` on `Ã`, with `dγ = f^*ε`.
pub fn section_defect_gamma(ext: &CentralExtension, lift: &Lift) -> Result<Cochain> {
    let source = lift.f.source();
    if lift.f_tilde.source() != source {
        return Err(Error::Extension("f and f̃ have different sources".into()));
    }
    if **lift.f.target() != **ext.base() || **lift.f_tilde.target() != **ext.total() {
        return Err(Error::Extension("lift does not map into the extension".into()));
    }
    if let Some(g) = source
        .elements()
        .find(|&g| ext.proj().apply(lift.f_tilde.apply(g)) != lift.f.apply(g))
    {
        return Err(Error::Extension(format!("square does not commute at element {g}")));
    }
    let total = ext.total();
    let values = source
        .elements()
        .map(|g| {
            let x = total.mul(ext.section()[lift.f.apply(g)], total.inv(lift.f_tilde.apply(g)));
            ext.kernel_coordinate(x).expect("commuting square lands in the kernel")
        })
        .collect();
    Cochain::from_values(source.clone(), CoeffModule::trivial(ext.modulus(), source), 1, values)
}

/// True iff ε is a coboundary, i.e. the extension has a homomorphic section.
pub fn is_split_central(ext: &CentralExtension) -> Result<bool> {
    Ok(is_coboundary(&extension_cocycle(ext)?)?.is_some())
}

/// `(ρ^*c)(g1..gi) = c(ρg1..ρgi)`, with the action pulled back along ρ.
pub fn pullback_cocycle(c: &Cochain, rho: &GroupHom) -> Result<Cochain> {
    if **rho.target() != **c.group() {
        return Err(Error::Mismatch("homomorphism target is not the cochain's group".into()));
    }
    let coeff = c.coeff().pullback(rho.map());
    let mut image = Vec::with_capacity(c.degree());
    Cochain::from_fn(rho.source().clone(), coeff, c.degree(), |g| {
        image.clear();
        image.extend(g.iter().map(|&x| rho.apply(x)));
        c.get(&image)
    })
}

/// On-disk extension description. Table-form groups must list their
/// identity at index 0 so that `proj_table` ids are unambiguous.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionFixture {
    #[serde(default)]
    pub name: Option<String>,
    pub total_group: GroupSpec,
    pub base_group: GroupSpec,
    pub proj_table: Vec<Elem>,
    pub kernel_gen: Elem,
}

impl ExtensionFixture {
    pub fn load(&self) -> Result<CentralExtension> {
        for spec in [&self.total_group, &self.base_group] {
            if let GroupSpec::Table { order, table, .. } = spec {
                if table.len() >= *order && table[..*order].iter().enumerate().any(|(i, &x)| i != x) {
                    return Err(Error::Fixture("table-form groups must have their identity at index 0".into()));
                }
            }
        }
        let total = Arc::new(self.total_group.build()?);
        let base = Arc::new(self.base_group.build()?);
        let proj = verify_homomorphism(total, base, self.proj_table.clone())?;
        CentralExtension::new(
            self.name.clone().unwrap_or_else(|| "fixture".into()),
            proj,
            self.kernel_gen,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{differential, is_cocycle};

    #[test]
    fn z4_over_z2_cocycle() {
        let ext = builtin_extension("Z/4->Z/2").unwrap();
        assert_eq!(ext.section(), &[0, 1]);
        let eps = extension_cocycle(&ext).unwrap();
        assert_eq!(eps.values(), &[0, 0, 0, 1]);
        assert!(!is_split_central(&ext).unwrap());
    }

    #[test]
    fn roster_splitness() {
        let expected = [("Z4-Z2", false), ("Q8-V4", false), ("D4-V4", false), ("GL2F3-S4", false), ("V4-Z2", true)];
        for (name, split) in expected {
            let ext = builtin_extension(name).unwrap();
            let eps = extension_cocycle(&ext).unwrap();
            assert!(is_cocycle(&eps).unwrap(), "{name}");
            assert!(eps.is_normalized(), "{name}");
            assert_eq!(is_split_central(&ext).unwrap(), split, "{name}");
        }
    }

    #[test]
    fn default_gamma_trivialises_epsilon() {
        for name in BUILTIN_EXTENSIONS {
            let ext = builtin_extension(name).unwrap();
            let gamma = section_defect_gamma(&ext, &Lift::default_for(&ext)).unwrap();
            let eps = extension_cocycle(&ext).unwrap();
            assert_eq!(gamma.get(&[0]), 0);
            assert_eq!(differential(&gamma).unwrap(), pullback_cocycle(&eps, ext.proj()).unwrap(), "{name}");
            let kernel = ext.proj().kernel();
            for &g in &kernel {
                for &h in &kernel {
                    let gh = ext.total().mul(g, h);
                    assert_eq!(gamma.get(&[gh]), (gamma.get(&[g]) + gamma.get(&[h])) % ext.modulus());
                }
            }
        }
    }

    #[test]
    fn bad_sections_and_kernels_rejected() {
        let ext = builtin_extension("Z4-Z2").unwrap();
        assert!(ext.clone().with_section(vec![2, 1]).is_err());
        assert!(ext.clone().with_section(vec![0, 2]).is_err());
        assert!(ext.with_section(vec![0, 3]).is_ok());
        let proj = builtin::cyclic_reduction(4, 2).unwrap();
        assert!(CentralExtension::new("bad", proj.clone(), 1).is_err());
        assert!(CentralExtension::new("bad", proj, 0).is_err());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let ext = builtin_extension("Z4-Z2").unwrap();
        let z4 = ext.total().clone();
        let shift = verify_homomorphism(z4.clone(), z4, vec![0, 2, 0, 2]).unwrap();
        let lift = Lift {
            f: ext.proj().clone(),
            f_tilde: shift,
        };
        assert!(matches!(section_defect_gamma(&ext, &lift), Err(Error::Extension(_))));
    }

    #[test]
    fn fixture_round_trip() {
        let json = r#"{"total_group": "Z/4", "base_group": "Z/2", "proj_table": [0,1,0,1], "kernel_gen": 2}"#;
        let fx: ExtensionFixture = serde_json::from_str(json).unwrap();
        let ext = fx.load().unwrap();
        assert_eq!(extension_cocycle(&ext).unwrap().values(), &[0, 0, 0, 1]);
    }
}
