//! Named groups and modules, and their JSON descriptors.
//!
//! Groups: `C<m>` (or `Z/<m>`), `klein4` (or `V4`), `Q8`, `Q16`, `Q32`,
//! `Q64`, or a path to a JSON group descriptor.
//!
//! Modules: `trivialZ`, `trivialF2`/`F3`/`F5`, `sign`, `regular`,
//! `regularF2`, `regular-mod-trivial`, `omega:<n>` (over `F_2`),
//! `omegaZ:<n>` and `omega2Z`, `l_zeta:<x|y|x+y>:<n>`,
//! `permutation:<label,…>`, `counterexample:<A|B|P|omega>:<m>`, or a path
//! to a JSON module descriptor.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coflasque::CounterexampleLattices;
use crate::error::{Error, Result};
use crate::gmodule::{l_zeta_klein, omega_klein, omega_negative_klein, GModule, Ring};
use crate::group::{FiniteGroup, GroupDescriptor};
use crate::linalg::Matrix;

/// JSON module descriptor: images of some group elements (by label); the
/// action of the rest follows by multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub ring: String,
    pub rank: usize,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{path}: {e}")))
}

fn looks_like_path(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let s = spec.trim();
    if looks_like_path(s) {
        let d: GroupDescriptor = read_json(s)?;
        return FiniteGroup::from_descriptor(&d);
    }
    match s {
        "klein4" | "V4" | "C2xC2" => return Ok(FiniteGroup::klein4()),
        "Q8" => return FiniteGroup::quaternion(3),
        "Q16" => return FiniteGroup::quaternion(4),
        "Q32" => return FiniteGroup::quaternion(5),
        "Q64" => return FiniteGroup::quaternion(6),
        _ => {}
    }
    let order = s.strip_prefix('C').or_else(|| s.strip_prefix("Z/"));
    match order.map(str::parse::<usize>) {
        Some(Ok(m)) => FiniteGroup::cyclic(m),
        _ => Err(parse_err(format!("unknown group `{s}`"))),
    }
}

pub fn module_from_descriptor(group: Arc<FiniteGroup>, d: &ModuleDescriptor) -> Result<GModule> {
    if let Some(name) = &d.group {
        if name != group.name() {
            return Err(Error::InvalidModule(format!("descriptor is for {name}, not {}", group.name())));
        }
    }
    let ring = Ring::parse(&d.ring)?;
    let mut images = Vec::new();
    for (label, rows) in &d.action {
        let g = group
            .element_by_label(label)
            .ok_or_else(|| parse_err(format!("no element labelled `{label}` in {}", group.name())))?;
        if rows.len() != d.rank || rows.iter().any(|r| r.len() != d.rank) {
            return Err(parse_err(format!("matrix for `{label}` is not {0}×{0}", d.rank)));
        }
        images.push((g, Matrix::from_rows(rows)));
    }
    GModule::from_generator_images(group, ring, d.rank, &images)
}

pub fn module_to_descriptor(m: &GModule) -> ModuleDescriptor {
    let g = m.group();
    let action = g.generators().iter().map(|&x| (g.label(x).to_string(), m.action(x).to_rows())).collect();
    ModuleDescriptor { group: Some(g.name().to_string()), ring: m.ring().to_string(), rank: m.rank(), action }
}

fn int_arg(s: &str, what: &str) -> Result<i32> {
    s.parse().map_err(|_| parse_err(format!("{what}: expected an integer, got `{s}`")))
}

fn sign_module(group: Arc<FiniteGroup>) -> Result<GModule> {
    let gen = group.cyclic_generator().filter(|_| group.order().is_multiple_of(2));
    let gen = gen.ok_or_else(|| Error::UnsupportedFamily(format!("no sign module on {}", group.name())))?;
    GModule::from_generator_images(group, Ring::Integers, 1, &[(gen, Matrix::from_rows(&[vec![-1]]))])
}

fn require_klein(group: &FiniteGroup, what: &str) -> Result<()> {
    if *group == FiniteGroup::klein4() {
        Ok(())
    } else {
        Err(Error::UnsupportedFamily(format!("{what} is defined for the Klein four group")))
    }
}

pub fn parse_module(group: Arc<FiniteGroup>, spec: &str) -> Result<GModule> {
    let s = spec.trim();
    if looks_like_path(s) {
        let d: ModuleDescriptor = read_json(s)?;
        return module_from_descriptor(group, &d);
    }
    let (head, rest) = match s.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (s, None),
    };
    match (head, rest) {
        ("trivialZ" | "trivial" | "Z", None) => Ok(GModule::trivial(group, Ring::Integers, 1)),
        ("trivialF2" | "F2", None) => Ok(GModule::trivial(group, Ring::F2, 1)),
        ("trivialF3" | "F3", None) => Ok(GModule::trivial(group, Ring::PrimeField(3), 1)),
        ("trivialF5" | "F5", None) => Ok(GModule::trivial(group, Ring::PrimeField(5), 1)),
        ("sign", None) => sign_module(group),
        ("regular" | "regularZ", None) => Ok(GModule::regular(group, Ring::Integers)),
        ("regularF2", None) => Ok(GModule::regular(group, Ring::F2)),
        ("regular-mod-trivial", None) => {
            let zg = GModule::regular(group, Ring::Integers);
            Ok(zg.submodule(&zg.augmentation_submodule())?.dual())
        }
        ("omega2Z", None) => GModule::trivial(group, Ring::Integers, 1).syzygy_power(2),
        ("omegaZ", Some(n)) => GModule::trivial(group, Ring::Integers, 1).syzygy_power(int_arg(n, "omegaZ")?),
        ("omega", Some(n)) => {
            let n = int_arg(n, "omega")?;
            if *group == FiniteGroup::klein4() {
                match n {
                    0 => Ok(GModule::trivial(group, Ring::F2, 1)),
                    n if n > 0 => omega_klein(n as usize),
                    n => omega_negative_klein(n.unsigned_abs() as usize),
                }
            } else {
                GModule::trivial(group, Ring::F2, 1).syzygy_power(n)
            }
        }
        ("l_zeta", Some(r)) => {
            require_klein(&group, "l_zeta")?;
            let (z, n) = r.split_once(':').ok_or_else(|| parse_err("l_zeta:<x|y|x+y>:<n>"))?;
            let zeta = match z {
                "x" => (1, 0),
                "y" => (0, 1),
                "x+y" | "xy" => (1, 1),
                _ => return Err(parse_err(format!("unknown ζ `{z}`, use x, y or x+y"))),
            };
            let n = int_arg(n, "l_zeta")?;
            l_zeta_klein(zeta, usize::try_from(n).map_err(|_| parse_err("l_zeta degree must be positive"))?)
        }
        ("permutation", Some(labels)) => {
            let mut gens = Vec::new();
            for l in labels.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                gens.push(group.element_by_label(l).ok_or_else(|| parse_err(format!("no element labelled `{l}`")))?);
            }
            let h = group.generated_subgroup(&gens);
            Ok(GModule::permutation(group, &h, Ring::Integers))
        }
        ("counterexample", Some(r)) => {
            require_klein(&group, "counterexample")?;
            let (which, m) = r.split_once(':').ok_or_else(|| parse_err("counterexample:<A|B|P|omega>:<m>"))?;
            let m = int_arg(m, "counterexample")?;
            let lat = CounterexampleLattices::new(usize::try_from(m).map_err(|_| parse_err("m must be positive"))?)?;
            match which {
                "A" => Ok(lat.a),
                "B" => Ok(lat.b),
                "P" => Ok(lat.p),
                "omega" => Ok(lat.omega),
                _ => Err(parse_err(format!("unknown lattice `{which}`, use A, B, P or omega"))),
            }
        }
        _ => Err(parse_err(format!("unknown module `{s}`"))),
    }
}
