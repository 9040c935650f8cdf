use super::assoc::{pairing_f, AssocFunction};
use super::dual::{pairing_minus2, Functional};
use crate::fncore::EntireFn;
use crate::numerics::linalg::project;
use crate::numerics::{IpEngine, IpMethod, Sampled};
use crate::operator::{ExtensionHandle, GammaDomainElement, StarDomainElement};
use crate::{exec, Cplx, DbError, Result, I};

/// `‖g‖₊₂ = ‖(S_γ - i) g‖`.
pub fn norm_plus2(ext: &ExtensionHandle, g: &GammaDomainElement) -> Result<f64> {
    ext.check_level(g)?;
    ext.space().norm(&g.generator_at(I))
}

/// `⟨f, g⟩₊₂ = ⟨(S_γ - i) f, (S_γ - i) g⟩`.
pub fn inner_plus2(ext: &ExtensionHandle, f: &GammaDomainElement, g: &GammaDomainElement) -> Result<Cplx> {
    ext.check_level(f)?;
    ext.check_level(g)?;
    ext.space().inner(&f.generator_at(I), &g.generator_at(I))
}

/// `k₊₂(·, w) = (S_γ² + 1)⁻¹ k(·, w) = R_γ(i) R_γ(-i) k(·, w)`.
pub fn kernel_plus2(ext: &ExtensionHandle, w: Cplx) -> Result<GammaDomainElement> {
    let inner = ext.resolvent_apply(-I, &EntireFn::kernel(w))?;
    ext.resolvent(I, &inner)
}

/// `g#` for `g ∈ dom(S_γ)`: `(R_γ(w) f)# = R_γ(w̄) f#`.
pub fn sharp_gamma(ext: &ExtensionHandle, g: &GammaDomainElement) -> Result<GammaDomainElement> {
    ext.check_level(g)?;
    ext.resolvent(g.pivot().conj(), &g.generator().sharp())
}

fn same_reference(f: &StarDomainElement, g: &StarDomainElement) -> Result<()> {
    if (f.gamma_ref() - g.gamma_ref()).abs() > 1e-15 {
        return Err(DbError::LevelMismatch);
    }
    Ok(())
}

/// `⟨f, g⟩₊F = ⟨h_f, h_g⟩₊₂ + conj(b_f) b_g ‖k(·, i)‖²`.
pub fn inner_plus_f(f: &StarDomainElement, g: &StarDomainElement) -> Result<Cplx> {
    same_reference(f, g)?;
    let sp = f.extension().space();
    let hh = sp.inner(f.generator(), g.generator())?;
    Ok(hh + f.b().conj() * g.b() * sp.kernel_diag(I)?)
}

/// `⟨f, g⟩₊F = ⟨S* f, S* g⟩ + ⟨f, g⟩` from the definition.
pub fn inner_plus_f_definitional(f: &StarDomainElement, g: &StarDomainElement) -> Result<Cplx> {
    let sp = f.extension().space();
    Ok(sp.inner(&f.star_apply(), &g.star_apply())? + sp.inner(f.function(), g.function())?)
}

pub fn norm_plus_f(g: &StarDomainElement) -> Result<f64> {
    Ok(inner_plus_f(g, g)?.re.max(0.0).sqrt())
}

/// `max_g |⟨f, g⟩| / ‖g‖₊F` over the dictionary; a lower bound for `‖f‖₋F`.
pub fn minus_f_lower(f: &AssocFunction, dict: &[StarDomainElement]) -> Result<f64> {
    if dict.is_empty() {
        return Err(DbError::EmptyDictionary);
    }
    let ratios = exec::try_map(dict.len(), |j| {
        let n = norm_plus_f(&dict[j])?;
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok::<_, DbError>(pairing_f(f, &dict[j])?.norm() / n)
    })?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// `max_u |⟨φ, u⟩₂| / ‖u‖₊₂` over the dictionary; a lower bound for `‖φ‖₋₂`.
pub fn minus2_lower(ext: &ExtensionHandle, phi: &Functional, dict: &[GammaDomainElement]) -> Result<f64> {
    if dict.is_empty() {
        return Err(DbError::EmptyDictionary);
    }
    let ratios = exec::try_map(dict.len(), |j| {
        let n = norm_plus2(ext, &dict[j])?;
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok::<_, DbError>(pairing_minus2(ext, phi, &dict[j])?.norm() / n)
    })?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// Norms of one `g ∈ dom(S_γ)` along the scale.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ScaleNorms {
    pub norm: f64,
    pub plus2: f64,
    pub plus_f: f64,
    pub minus_f_lower: f64,
    pub minus2_lower: f64,
}

/// `plus_f` is taken from the graph-norm definition, independently of `plus2`.
pub fn scale_norms(
    ext: &ExtensionHandle,
    g: &GammaDomainElement,
    star_dict: &[StarDomainElement],
    gamma_dict: &[GammaDomainElement],
) -> Result<ScaleNorms> {
    let sp = ext.space();
    let star = StarDomainElement::from_domain(ext, g)?;
    Ok(ScaleNorms {
        norm: sp.norm(g.function())?,
        plus2: norm_plus2(ext, g)?,
        plus_f: inner_plus_f_definitional(&star, &star)?.re.max(0.0).sqrt(),
        minus_f_lower: minus_f_lower(&AssocFunction::from_b(g.function()), star_dict)?,
        minus2_lower: minus2_lower(ext, &Functional::InB(g.function().clone()), gamma_dict)?,
    })
}

/// `+F` distance from `d = S_γ R_γ(i) k(·, i)` to the span of a dictionary in `dom(S_γ)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct NonDensityReport {
    pub distance: f64,
    /// `‖k(·, i)‖`.
    pub reference: f64,
    pub condition: f64,
    pub dictionary_size: usize,
}

/// All `+F` inner products are taken from the graph-norm definition.
pub fn non_density(ext: &ExtensionHandle, dict: &[GammaDomainElement]) -> Result<NonDensityReport> {
    if dict.is_empty() {
        return Err(DbError::EmptyDictionary);
    }
    let sp = ext.space();
    let engine = match sp.engine().method {
        IpMethod::SamplingSeries { .. } => *sp.engine(),
        IpMethod::AdaptiveQuadrature { .. } => IpEngine::default_sampling(),
    };
    let d = StarDomainElement::new(ext, &EntireFn::zero(), 1.0.into())?;
    let mut members: Vec<(EntireFn, EntireFn)> = Vec::with_capacity(dict.len() + 1);
    for g in dict {
        members.push((g.function().clone(), ext.apply(g)?));
    }
    members.push((d.function().clone(), d.star_apply()));
    let sampled = exec::try_map(members.len(), |j| {
        Ok::<_, DbError>((Sampled::new(sp, &engine, &members[j].0)?, Sampled::new(sp, &engine, &members[j].1)?))
    })?;
    let n = dict.len();
    let ip = |j: usize, l: usize| -> Result<Cplx> {
        Ok(Sampled::inner(sp, &engine, &sampled[j].1, &sampled[l].1)?
            + Sampled::inner(sp, &engine, &sampled[j].0, &sampled[l].0)?)
    };
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (j..=n).map(move |l| (j, l))).collect();
    let vals = exec::try_map(pairs.len(), |p| ip(pairs[p].0, pairs[p].1))?;
    let mut full = vec![vec![Cplx::new(0.0, 0.0); n + 1]; n + 1];
    for (&(j, l), v) in pairs.iter().zip(vals) {
        full[j][l] = v;
        full[l][j] = v.conj();
    }
    let gram: Vec<Vec<Cplx>> = full[..n].iter().map(|row| row[..n].to_vec()).collect();
    let moments: Vec<Cplx> = (0..n).map(|j| full[j][n]).collect();
    let proj = project(&gram, &moments, full[n][n].re)?;
    Ok(NonDensityReport {
        distance: proj.residual,
        reference: sp.kernel_diag(I)?.sqrt(),
        condition: proj.condition,
        dictionary_size: n,
    })
}
