use super::BarComplex;
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::group::FiniteGroup;

/// `a ∪ b` for a cochain `a` of degree `p` with trivial rank-one
/// coefficients and a cochain `b` of degree `q` in `M`:
/// `(a∪b)(g_1..g_{p+q}) = a(g_1..g_p) · (g_1⋯g_p)·b(g_{p+1}..g_{p+q})`.
pub fn cup_with_trivial(
    coeff: &GModule,
    a: &[i64],
    p: usize,
    m: &GModule,
    b: &[i64],
    q: usize,
) -> Result<Vec<i64>> {
    if coeff.group() != m.group() {
        return Err(Error::InvalidArgument("cup product of cochains over different groups".into()));
    }
    if coeff.rank() != 1 || coeff.actions().iter().any(|x| x[(0, 0)] != 1) {
        return Err(Error::InvalidArgument("left factor must have trivial rank-one coefficients".into()));
    }
    match (coeff.ring(), m.ring()) {
        (Ring::Integers, _) => {}
        (Ring::PrimeField(a), Ring::PrimeField(b)) if a == b => {}
        (x, y) => return Err(Error::RingMismatch(format!("cannot pair {x}-cochains with {y}-coefficients"))),
    }
    let (bar_a, bar_m) = (BarComplex::new(coeff), BarComplex::new(m));
    if a.len() != bar_a.dim(p) || b.len() != bar_m.dim(q) {
        return Err(Error::InvalidArgument("cochain length does not match its degree".into()));
    }
    let g = m.group();
    let mut out = bar_m.cochain_from_fn(p + q, |t| {
        let av = bar_a.value(a, &t[..p]).map_or(0, |v| v[0]);
        if av == 0 {
            return vec![0; m.rank()];
        }
        let prod = t[..p].iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
        let bv = bar_m.value(b, &t[p..]).expect("tuple entries are non-identity");
        m.action(prod).mul_vec(bv).into_iter().map(|x| av * x).collect()
    });
    bar_m.reduce(&mut out);
    Ok(out)
}

/// The carry 2-cocycle `c(g_1, g_2) = (χ(g_1) + χ(g_2) − χ(g_1g_2)) / N` of a
/// character `χ : H → Z/N` (values given per element in `0..N`), a cochain
/// with trivial `Z` coefficients representing the image of `χ` under
/// `Hom(H, Q/Z) ≅ H^2(H, Z)`.
pub fn character_chern(h: &FiniteGroup, chi: &[u64], modulus: u64) -> Result<Vec<i64>> {
    if chi.len() != h.order() || chi.iter().any(|&v| v >= modulus) {
        return Err(Error::InvalidArgument("character values must lie in 0..N, one per element".into()));
    }
    for a in h.elements() {
        for b in h.elements() {
            if (chi[a] + chi[b]) % modulus != chi[h.mul(a, b)] {
                return Err(Error::InvalidArgument("character is not a homomorphism".into()));
            }
        }
    }
    let z = GModule::trivial(std::sync::Arc::new(h.clone()), Ring::Integers, 1);
    let bar = BarComplex::new(&z);
    Ok(bar.cochain_from_fn(2, |t| vec![((chi[t[0]] + chi[t[1]] - chi[h.mul(t[0], t[1])]) / modulus) as i64]))
}

/// The degree-one classes `x` (`which = 0`) and `y` (`which = 1`) of the
/// Klein four group, `x(g) = 1, x(h) = 0` and `y(g) = 0, y(h) = 1`, as
/// functions on the elements `1, g, h, gh`.
pub fn klein_degree_one(which: usize) -> [i64; 4] {
    match which {
        0 => [0, 1, 0, 1],
        _ => [0, 0, 1, 1],
    }
}

/// Bar cocycle of `x^a y^b` with trivial `F_2` coefficients:
/// `(g_1..g_{a+b}) ↦ Π_{t≤a} x(g_t) · Π_{t>a} y(g_t)`.
pub fn klein_monomial(f2: &GModule, a: usize, b: usize) -> Vec<i64> {
    let (x, y) = (klein_degree_one(0), klein_degree_one(1));
    BarComplex::new(f2).cochain_from_fn(a + b, |t| {
        let v = t[..a].iter().map(|&g| x[g]).product::<i64>() * t[a..].iter().map(|&g| y[g]).product::<i64>();
        vec![v]
    })
}
