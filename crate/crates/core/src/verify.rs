//! Verification batteries: closed forms against independent oracles,
//! counterexample dimensions and lattice structure, regularity, and
//! property suites. Each battery returns a table of checks in a fixed order.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::chow::{
    transfer_generation_check, twisted_chow_cyclic, twisted_chow_klein, twisted_chow_quaternion,
    twisted_motivic_klein, twisted_motivic_klein_explicit,
};
use crate::coflasque::{is_coflasque, CoflasqueResolution, CounterexampleLattices};
use crate::cohomology::{bar_cohomology_structure, check_cor_res_all, check_double_coset, cyclic_cohomology, BarComplex};
use crate::error::Result;
use crate::gmodule::{omega_klein, omega_negative_klein, GModule, Ring};
use crate::graded::{cm_regularity, hilbert_series, klein_chow_presentation, minimal_free_resolution};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub case: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn new(case: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check { case: case.into(), pass: expected == computed, expected, computed }
    }

    fn flag(case: impl Into<String>, ok: Result<bool>) -> Self {
        let computed = match ok {
            Ok(true) => "holds".to_string(),
            Ok(false) => "fails".to_string(),
            Err(e) => format!("error: {e}"),
        };
        Check { case: case.into(), pass: computed == "holds", expected: "holds".into(), computed }
    }

    fn from_result<T: fmt::Display>(case: impl Into<String>, expected: impl fmt::Display, r: Result<T>) -> Self {
        match r {
            Ok(v) => Check::new(case, expected, v),
            Err(e) => Check { case: case.into(), expected: expected.to_string(), computed: format!("error: {e}"), pass: false },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Battery {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Battery {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Battery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.case.len()).max().unwrap_or(4).max(4);
        writeln!(f, "{:<w$}  {:<20}  {:<20}  status", "case", "expected", "computed")?;
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "{:<w$}  {:<20}  {:<20}  {status}", c.case, c.expected, c.computed)?;
        }
        Ok(())
    }
}

fn battery(name: &str, checks: Vec<Check>) -> Battery {
    Battery { name: name.to_string(), checks }
}

fn torsion(t: &[u64]) -> GroupStructure {
    GroupStructure::Abelian(FiniteAbelianGroup::new(0, t.to_vec()))
}

/// Largest bar cochain dimension used as an integral oracle in batteries.
const BAR_ORACLE_CELLS: u128 = 700;

// ---------------------------------------------------------------------------
// random lattices

/// `U·A_g·U⁻¹` for a random unimodular `U` built from elementary moves.
fn conjugate_random(m: &GModule, rng: &mut ChaCha8Rng) -> Result<GModule> {
    let r = m.rank();
    let mut u = Matrix::identity(r);
    let mut u_inv = Matrix::identity(r);
    if r > 1 {
        for _ in 0..2 * r {
            let i = rng.gen_range(0..r);
            let j = (i + rng.gen_range(1..r)) % r;
            let c = rng.gen_range(-2..=2i64);
            // row_i += c·row_j on U, column_j -= c·column_i on U⁻¹
            let mut e = Matrix::identity(r);
            e[(i, j)] = c;
            let mut e_inv = Matrix::identity(r);
            e_inv[(i, j)] = -c;
            u = e.mul(&u);
            u_inv = u_inv.mul(&e_inv);
        }
    }
    let action = m.actions().iter().map(|a| u.mul(a).mul(&u_inv)).collect();
    GModule::from_action(m.group_arc().clone(), m.ring(), r, action)
}

fn character(group: &Arc<FiniteGroup>, signs: &[i64]) -> Result<GModule> {
    let images: Vec<(usize, Matrix)> =
        group.generators().iter().zip(signs).map(|(&g, &s)| (g, Matrix::from_rows(&[vec![s]]))).collect();
    GModule::from_generator_images(group.clone(), Ring::Integers, 1, &images)
}

/// Random lattice of rank at most `max_rank`: a direct sum of permutation
/// and sign-character pieces, conjugated by a random unimodular matrix.
pub fn random_lattice(group: &Arc<FiniteGroup>, max_rank: usize, rng: &mut ChaCha8Rng) -> Result<GModule> {
    let subgroups = group.subgroups();
    let mut m = GModule::zero(group.clone(), Ring::Integers);
    while m.rank() == 0 || (m.rank() < max_rank && rng.gen_bool(0.5)) {
        let piece = if rng.gen_bool(0.4) {
            let signs: Vec<i64> = group.generators().iter().map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            match character(group, &signs) {
                Ok(c) => c,
                Err(_) => continue,
            }
        } else {
            let h = &subgroups[rng.gen_range(0..subgroups.len())];
            GModule::permutation(group.clone(), h, Ring::Integers)
        };
        if m.rank() + piece.rank() <= max_rank {
            m = m.direct_sum(&piece)?;
        } else if m.rank() > 0 {
            break;
        }
    }
    conjugate_random(&m, rng)
}

// ---------------------------------------------------------------------------
// 1. cyclic groups

fn cyclic_modules(m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(String, GModule)>> {
    let g = Arc::new(FiniteGroup::cyclic(m)?);
    let zg = GModule::regular(g.clone(), Ring::Integers);
    let mut out = vec![
        ("trivialZ".to_string(), GModule::trivial(g.clone(), Ring::Integers, 1)),
        ("regular".to_string(), zg.clone()),
        ("regular-mod-trivial".to_string(), zg.submodule(&zg.augmentation_submodule())?.dual()),
    ];
    if m.is_multiple_of(2) {
        out.push(("sign".to_string(), character(&g, &[-1])?));
    }
    for k in 0..2 {
        out.push((format!("random#{k}"), random_lattice(&g, 4, rng)?));
    }
    Ok(out)
}

fn cyclic_case(name: &str, module: &GModule, i: usize) -> Check {
    let case = format!("{} {name} i={i}", module.group().name());
    let run = || -> Result<(String, String)> {
        let value = twisted_chow_cyclic(module, i, false)?.value;
        let periodic = cyclic_cohomology(module, 2 * i)?;
        let mut expected = periodic.to_string();
        if BarComplex::new(module).cells(2 * i) <= BAR_ORACLE_CELLS {
            let bar = bar_cohomology_structure(module, 2 * i)?;
            if bar != periodic {
                expected = format!("{periodic} | bar {bar}");
            }
        }
        Ok((expected, value.to_string()))
    };
    match run() {
        Ok((expected, computed)) => Check::new(case, expected, computed),
        Err(e) => Check { case, expected: "oracle".into(), computed: format!("error: {e}"), pass: false },
    }
}

/// `CH^i(BZ/m, M)` against `H^{2i}` from the bar complex (when small) and
/// the periodic resolution, `i = 1, 2, 3`.
pub fn cyclic_battery(orders: impl IntoIterator<Item = usize>) -> Battery {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c0c);
    let mut jobs = Vec::new();
    let mut checks = Vec::new();
    for m in orders {
        match cyclic_modules(m, &mut rng) {
            Ok(mods) => {
                for (name, module) in mods {
                    for i in 1..=3 {
                        jobs.push((name.clone(), module.clone(), i));
                    }
                }
            }
            Err(e) => checks.push(Check::from_result::<String>(format!("C{m}"), "modules", Err(e))),
        }
        // M = Z gives Z/m
        if let Ok(g) = FiniteGroup::cyclic(m) {
            let z = GModule::trivial(Arc::new(g), Ring::Integers, 1);
            checks.push(Check::from_result(
                format!("C{m} trivialZ i=1 closed form"),
                torsion(&[m as u64]),
                twisted_chow_cyclic(&z, 1, false).map(|r| r.value),
            ));
        }
    }
    checks.extend(jobs.par_iter().map(|(n, md, i)| cyclic_case(n, md, *i)).collect::<Vec<_>>());
    battery("cyclic", checks)
}

// ---------------------------------------------------------------------------
// 2. quaternion groups

pub fn quaternion_battery() -> Battery {
    let mut checks = Vec::new();
    let q8 = Arc::new(FiniteGroup::quaternion(3).expect("Q8"));
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    let om = z.syzygy_power(2);
    match om {
        Ok(om) => {
            checks.push(Check::from_result("Q8 omega2Z H^2 (bar)", torsion(&[8]), bar_cohomology_structure(&om, 2)));
            let ch = twisted_chow_quaternion(3, &om, 1);
            let exp = ch.as_ref().ok().and_then(|r| match &r.value {
                GroupStructure::Abelian(a) => a.exponent(),
                _ => None,
            });
            checks.push(Check::new(
                "Q8 omega2Z CH^1 exponent divides 4",
                "true",
                exp.map(|e| (4 % e == 0).to_string()).unwrap_or_else(|| "error".into()),
            ));
            checks.push(Check::from_result(
                "Q8 omega2Z CH^1 ambient",
                torsion(&[8]),
                ch.and_then(|r| r.ambient.ok_or_else(|| crate::Error::Linalg("no ambient".into()))),
            ));
        }
        Err(e) => checks.push(Check::from_result::<String>("Q8 omega2Z", "module", Err(e))),
    }
    checks.push(Check::from_result("Q8 trivialZ CH^1", torsion(&[2, 2]), twisted_chow_quaternion(3, &z, 1).map(|r| r.value)));
    checks.push(Check::from_result("Q8 trivialZ CH^2", torsion(&[8]), twisted_chow_quaternion(3, &z, 2).map(|r| r.value)));
    let q16 = Arc::new(FiniteGroup::quaternion(4).expect("Q16"));
    let z16 = GModule::trivial(q16, Ring::Integers, 1);
    checks.push(Check::from_result("Q16 trivialZ CH^2", torsion(&[16]), twisted_chow_quaternion(4, &z16, 2).map(|r| r.value)));
    checks.push(Check::from_result("Q16 trivialZ CH^1", torsion(&[2, 2]), twisted_chow_quaternion(4, &z16, 1).map(|r| r.value)));
    battery("quaternion", checks)
}

// ---------------------------------------------------------------------------
// 3. Klein four group

fn dim_of(r: Result<crate::chow::TwistedChowResult>) -> Result<String> {
    r.map(|x| x.value.dim().map_or_else(|| x.value.to_string(), |d| d.to_string()))
}

pub fn klein_battery(ms: impl IntoIterator<Item = usize>) -> Battery {
    let f2 = GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1);
    let mut jobs: Vec<(String, usize, Result<GModule>, usize)> = Vec::new();
    for m in ms {
        let neg = omega_negative_klein(m);
        for i in 0..=3 {
            jobs.push((format!("omega:-{m}"), m + 2 * i + 1, neg.clone(), i));
        }
    }
    let om = omega_klein(1);
    for i in 1..=3 {
        jobs.push(("omega:1".into(), 0, om.clone(), i));
    }
    for i in 0..=3 {
        jobs.push(("trivialF2".into(), i + 1, Ok(f2.clone()), i));
    }
    let checks = jobs
        .par_iter()
        .map(|(name, expected, m, i)| {
            let dim = m.clone().and_then(|m| dim_of(twisted_chow_klein(&m, *i)));
            Check::from_result(format!("klein4 {name} CH^{i}"), expected, dim)
        })
        .collect();
    battery("klein", checks)
}

// ---------------------------------------------------------------------------
// 4. counterexample dimensions

pub fn counterexample_battery(ms: impl IntoIterator<Item = usize>) -> Battery {
    let ms: Vec<usize> = ms.into_iter().collect();
    let checks: Vec<Vec<Check>> = ms
        .par_iter()
        .map(|&m| {
            let mut c = Vec::new();
            let motivic = twisted_motivic_klein_explicit(m, 1).map(|(r, _)| r.value.dim().unwrap_or(usize::MAX));
            let chow = omega_negative_klein(m).and_then(|om| twisted_chow_klein(&om, 1)).map(|r| r.value.dim().unwrap_or(usize::MAX));
            let generic = omega_negative_klein(m).and_then(|om| twisted_motivic_klein(&om, 1)).map(|r| r.value.dim().unwrap_or(usize::MAX));
            let kernel = match (&motivic, &chow) {
                (Ok(a), Ok(b)) => Ok(a.saturating_sub(*b)),
                _ => Err(crate::Error::Linalg("missing dimension".into())),
            };
            c.push(Check::from_result(format!("m={m} motivic H^2 (explicit)"), 2 * m + 2, motivic));
            c.push(Check::from_result(format!("m={m} motivic H^2 (generic)"), 2 * m + 2, generic));
            c.push(Check::from_result(format!("m={m} CH^1"), m + 3, chow));
            c.push(Check::from_result(format!("m={m} kernel of surjection"), m - 1, kernel));
            c
        })
        .collect();
    battery("counterexample", checks.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// 5. counterexample lattices

pub fn lattice_battery(ms: impl IntoIterator<Item = usize>) -> Battery {
    let ms: Vec<usize> = ms.into_iter().collect();
    let checks: Vec<Vec<Check>> = ms
        .par_iter()
        .map(|&m| {
            let mut c = Vec::new();
            let lat = match CounterexampleLattices::new(m) {
                Ok(l) => l,
                Err(e) => return vec![Check::from_result::<String>(format!("m={m}"), "lattices", Err(e))],
            };
            c.push(Check::new(format!("m={m} rank A"), 5 * m + 1, lat.a.rank()));
            c.push(Check::from_result(format!("m={m} rank A^G"), 2 * m + 1, lat.a.fixed_points().map(|x| x.cols())));
            for (k, h) in lat.cyclic_subgroups.iter().enumerate() {
                c.push(Check::from_result(
                    format!("m={m} rank A^H{}", k + 1),
                    3 * m + 1,
                    lat.a.fixed_points_of(h).map(|x| x.cols()),
                ));
            }
            c.push(Check::flag(format!("m={m} A = ker(B → Ω^-m)"), lat.a_is_kernel()));
            c.push(Check::flag(format!("m={m} A coflasque"), is_coflasque(&lat.a)));
            c.push(Check::flag(format!("m={m} ker(P → A) coflasque"), lat.p_kernel().and_then(|k| is_coflasque(&k))));
            c
        })
        .collect();
    battery("lattices", checks.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// 6. regularity

pub fn regularity_battery(ms: impl IntoIterator<Item = usize>) -> Battery {
    let ms: Vec<usize> = ms.into_iter().collect();
    let checks: Vec<Vec<Check>> = ms
        .par_iter()
        .map(|&m| {
            let horizon = m + 6;
            let pres = match omega_klein(m).and_then(|om| klein_chow_presentation(&om, horizon)) {
                Ok(p) => p,
                Err(e) => return vec![Check::from_result::<String>(format!("m={m}"), "presentation", Err(e))],
            };
            let expected_h: Vec<usize> = (0..=horizon).map(|i| m.saturating_sub(2 * i)).collect();
            let h = hilbert_series(&pres, horizon);
            let mut c = vec![Check::new(format!("m={m} Hilbert"), format!("{expected_h:?}"), format!("{h:?}"))];
            match minimal_free_resolution(&pres) {
                Ok(b) => {
                    c.push(Check::new(format!("m={m} Betti shape"), format!("{:?}", [m, m + 2, 2]), format!("{:?}", b.shape())));
                    let mut f2 = b.degrees[2].clone();
                    f2.sort_unstable();
                    c.push(Check::new(
                        format!("m={m} second syzygy degrees"),
                        format!("{:?}", [(m + 2) / 2, (m + 3) / 2]),
                        format!("{f2:?}"),
                    ));
                    c.push(Check::from_result(format!("m={m} regularity"), (m as i64 - 1) / 2, cm_regularity(&b)));
                    c.push(Check::new(format!("m={m} Euler characteristic"), true, b.matches_hilbert(&h)));
                }
                Err(e) => c.push(Check::from_result::<String>(format!("m={m} resolution"), "complete", Err(e))),
            }
            c
        })
        .collect();
    battery("regularity", checks.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------
// generation by transfers

pub fn transfer_battery() -> Battery {
    let klein = Arc::new(FiniteGroup::klein4());
    let mut jobs: Vec<(String, Result<GModule>, usize)> = Vec::new();
    for (name, m) in [
        ("trivialF2", Ok(GModule::trivial(klein.clone(), Ring::F2, 1))),
        ("omega:1", omega_klein(1)),
        ("omega:-1", omega_negative_klein(1)),
        ("omega:-2", omega_negative_klein(2)),
    ] {
        for i in 0..=2 {
            jobs.push((format!("klein4 {name}"), m.clone(), i));
        }
    }
    for n in 2..=6 {
        let g = Arc::new(FiniteGroup::cyclic(n).expect("cyclic"));
        let zg = GModule::regular(g.clone(), Ring::Integers);
        jobs.push((format!("C{n} trivialZ"), Ok(GModule::trivial(g.clone(), Ring::Integers, 1)), 1));
        jobs.push((format!("C{n} trivialZ"), Ok(GModule::trivial(g.clone(), Ring::Integers, 1)), 2));
        jobs.push((format!("C{n} regular-mod-trivial"), zg.submodule(&zg.augmentation_submodule()).map(|s| s.dual()), 1));
    }
    let q8 = Arc::new(FiniteGroup::quaternion(3).expect("Q8"));
    let z = GModule::trivial(q8, Ring::Integers, 1);
    jobs.push(("Q8 trivialZ".into(), Ok(z.clone()), 1));
    jobs.push(("Q8 omega2Z".into(), z.syzygy_power(2), 1));
    let checks = jobs
        .par_iter()
        .map(|(name, m, i)| {
            let r = m.clone().and_then(|m| transfer_generation_check(&m, *i));
            match r {
                Ok(rep) => Check::new(format!("{name} CH^{i}"), rep.computed, rep.generated),
                Err(e) => Check::from_result::<String>(format!("{name} CH^{i}"), "generated", Err(e)),
            }
        })
        .collect();
    battery("transfer", checks)
}

// ---------------------------------------------------------------------------
// 7. property suites

/// (a) `cor∘res = [G:H]` for all subgroups of the Klein four and `Q_8`, `n ≤ 3`.
pub fn cor_res_battery() -> Battery {
    let klein = Arc::new(FiniteGroup::klein4());
    let q8 = Arc::new(FiniteGroup::quaternion(3).expect("Q8"));
    let mut modules: Vec<(String, Result<GModule>)> = vec![
        ("klein4 trivialZ".into(), Ok(GModule::trivial(klein.clone(), Ring::Integers, 1))),
        ("klein4 trivialF2".into(), Ok(GModule::trivial(klein.clone(), Ring::F2, 1))),
        ("klein4 regular".into(), Ok(GModule::regular(klein.clone(), Ring::Integers))),
        ("klein4 omega:-2".into(), omega_negative_klein(2)),
        ("Q8 trivialZ".into(), Ok(GModule::trivial(q8.clone(), Ring::Integers, 1))),
        ("Q8 trivialF2".into(), Ok(GModule::trivial(q8.clone(), Ring::F2, 1))),
    ];
    modules.push(("Q8 omega2Z".into(), GModule::trivial(q8, Ring::Integers, 1).syzygy_power(2)));
    let mut jobs = Vec::new();
    for (name, m) in &modules {
        let Ok(m) = m else { continue };
        for n in 0..=3 {
            jobs.push((name.clone(), m.clone(), n));
        }
    }
    let mut checks: Vec<Check> = modules
        .iter()
        .filter_map(|(n, m)| m.as_ref().err().map(|e| Check::flag(n.clone(), Err(e.clone()))))
        .collect();
    let results: Vec<Vec<Check>> = jobs
        .par_iter()
        .map(|(name, m, n)| match check_cor_res_all(m, *n) {
            Ok(all) => all
                .into_iter()
                .map(|(h, ok)| Check::flag(format!("{name} H={:?} n={n}", h.elements()), Ok(ok)))
                .collect(),
            Err(e) => vec![Check::flag(format!("{name} n={n}"), Err(e))],
        })
        .collect();
    checks.extend(results.into_iter().flatten());
    battery("cor-res", checks)
}

/// (b) Double coset formula for every pair of subgroups of `Q_8`, `n ≤ 2`.
pub fn double_coset_battery() -> Battery {
    let q8 = Arc::new(FiniteGroup::quaternion(3).expect("Q8"));
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    let mut modules = vec![("trivialZ", Ok(z.clone())), ("trivialF2", Ok(GModule::trivial(q8.clone(), Ring::F2, 1)))];
    modules.push(("omega2Z", z.syzygy_power(2)));
    let subs = q8.subgroups();
    let mut jobs = Vec::new();
    for (name, m) in &modules {
        let Ok(m) = m else { continue };
        for k in &subs {
            for h in &subs {
                for n in 1..=2 {
                    jobs.push((*name, m.clone(), k.clone(), h.clone(), n));
                }
            }
        }
    }
    let checks = jobs
        .par_iter()
        .map(|(name, m, k, h, n)| {
            Check::flag(format!("Q8 {name} K={:?} H={:?} n={n}", k.elements(), h.elements()), check_double_coset(m, k, h, *n))
        })
        .collect();
    battery("double-coset", checks)
}

/// (c) Coflasque resolutions of random lattices over `Z/m` (`m ≤ 8`), the
/// Klein four group and `Q_8` pass their three invariants.
pub fn coflasque_battery(count: usize) -> Battery {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0f1);
    let mut groups: Vec<Arc<FiniteGroup>> = (2..=8).map(|m| Arc::new(FiniteGroup::cyclic(m).expect("cyclic"))).collect();
    groups.push(Arc::new(FiniteGroup::klein4()));
    groups.push(Arc::new(FiniteGroup::quaternion(3).expect("Q8")));
    let mut jobs = Vec::new();
    for k in 0..count {
        let g = &groups[k % groups.len()];
        let max_rank = if g.order() == 8 && !g.is_abelian() { 4 } else { 5 };
        jobs.push((k, random_lattice(g, max_rank, &mut rng)));
    }
    let checks = jobs
        .par_iter()
        .map(|(k, m)| {
            let name = match m {
                Ok(m) => format!("#{k} {} rank {}", m.group().name(), m.rank()),
                Err(_) => format!("#{k}"),
            };
            let ok = m.clone().and_then(|m| {
                let pruned = CoflasqueResolution::new(&m, true)?.verify()?.all();
                Ok(pruned)
            });
            Check::flag(name, ok)
        })
        .collect();
    battery("coflasque", checks)
}

/// (d) Euler periodicity: cyclic values agree in degrees `i` and `i+1`,
/// quaternion values in degrees `i` and `i+2`, and `M^G/tr M` matches
/// `H^4(Q_8, M)` from the bar complex.
pub fn periodicity_battery() -> Battery {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1e1);
    let mut checks = Vec::new();
    for m in 2..=12 {
        let Ok(mods) = cyclic_modules(m, &mut rng) else { continue };
        for (name, module) in mods {
            for i in 1..=2 {
                let a = twisted_chow_cyclic(&module, i, false).map(|r| r.value);
                let b = twisted_chow_cyclic(&module, i + 1, false).map(|r| r.value);
                checks.push(match (a, b) {
                    (Ok(a), Ok(b)) => Check::new(format!("C{m} {name} CH^{i} vs CH^{}", i + 1), a, b),
                    (Err(e), _) | (_, Err(e)) => Check::from_result::<String>(format!("C{m} {name}"), "value", Err(e)),
                });
            }
        }
    }
    let q8 = Arc::new(FiniteGroup::quaternion(3).expect("Q8"));
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    let mut qmods = vec![("trivialZ", Ok(z.clone())), ("regular", Ok(GModule::regular(q8.clone(), Ring::Integers)))];
    qmods.push(("omega2Z", z.syzygy_power(2)));
    for (name, m) in qmods {
        let Ok(m) = m else { continue };
        for i in 1..=2 {
            let a = twisted_chow_quaternion(3, &m, i).map(|r| r.value);
            let b = twisted_chow_quaternion(3, &m, i + 2).map(|r| r.value);
            checks.push(match (a, b) {
                (Ok(a), Ok(b)) => Check::new(format!("Q8 {name} CH^{i} vs CH^{}", i + 2), a, b),
                (Err(e), _) | (_, Err(e)) => Check::from_result::<String>(format!("Q8 {name}"), "value", Err(e)),
            });
        }
    }
    checks.push(Check::from_result(
        "Q8 trivialZ CH^2 vs bar H^4",
        bar_cohomology_structure(&z, 4).map(|s| s.to_string()).unwrap_or_else(|e| format!("error: {e}")),
        twisted_chow_quaternion(3, &z, 2).map(|r| r.value),
    ));
    battery("periodicity", checks)
}

/// (e) `δ² = 0` on the bar complex up to degree 6 for groups of order 4.
pub fn coboundary_battery() -> Battery {
    let klein = Arc::new(FiniteGroup::klein4());
    let c4 = Arc::new(FiniteGroup::cyclic(4).expect("C4"));
    let mut modules = vec![
        ("klein4 trivialZ".to_string(), Ok(GModule::trivial(klein.clone(), Ring::Integers, 1))),
        ("klein4 regular".to_string(), Ok(GModule::regular(klein.clone(), Ring::Integers))),
        ("klein4 omega:-1".to_string(), omega_negative_klein(1)),
        ("C4 trivialZ".to_string(), Ok(GModule::trivial(c4.clone(), Ring::Integers, 1))),
        ("C4 regular".to_string(), Ok(GModule::regular(c4.clone(), Ring::Integers))),
    ];
    modules.push(("C4 sign".into(), character(&c4, &[-1])));
    let mut jobs = Vec::new();
    for (name, m) in &modules {
        let Ok(m) = m else { continue };
        for n in 0..5 {
            jobs.push((name.clone(), m.clone(), n));
        }
    }
    let checks = jobs
        .par_iter()
        .map(|(name, m, n)| {
            let ok = (|| -> Result<bool> {
                let bar = BarComplex::new(m);
                let dd = bar.coboundary(n + 1)?.compose(&bar.coboundary(*n)?);
                Ok(match m.modulus() {
                    Some(p) => dd.reduce(p).is_zero(),
                    None => dd.is_zero(),
                })
            })();
            Check::flag(format!("{name} δ_{}δ_{n}", n + 1), ok)
        })
        .collect();
    battery("coboundary", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_fails_on_any_mismatch() {
        let ok = Check::new("a", 3, 3);
        let bad = Check::new("b", "Z/8", "Z/4");
        assert!(battery("x", vec![ok.clone()]).pass());
        let b = battery("x", vec![ok, bad]);
        assert!(!b.pass());
        assert_eq!(b.failures().count(), 1);
        assert!(!battery("empty", Vec::new()).pass());
        assert!(!Check::flag("e", Err(crate::Error::Linalg("x".into()))).pass);
    }

    #[test]
    fn random_lattices_are_reproducible_modules() {
        let g = Arc::new(FiniteGroup::cyclic(6).unwrap());
        let a = random_lattice(&g, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_lattice(&g, 4, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!((1..=4).contains(&a.rank()));
    }

    #[test]
    fn small_batteries_pass() {
        assert!(cyclic_battery(2..=4).pass());
        assert!(klein_battery(1..=2).pass());
        assert!(regularity_battery(2..=3).pass());
    }
}
