use super::car::{induced_site_hom, CarAlgebra};
use super::sites::{SiteEmbedding, SitePermutation, SiteSet};
use super::witness::{scalar_ratio, WitnessCache};
use crate::algebra::{AlgHom, Unit};
use crate::error::{Error, Result};
use crate::homgroupoid::{check_two_cell, hcompose, TwoCell};
use crate::interval::IntervalTwoCell;
use crate::scalar::Scalar;

/// A square `b ∘ ε0 = ε1 ∘ a` of site maps, with `a`, `b` site permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteCell {
    src: SiteEmbedding,
    dst: SiteEmbedding,
    a: SitePermutation,
    b: SitePermutation,
}

impl SiteCell {
    pub fn new(src: SiteEmbedding, dst: SiteEmbedding, a: SitePermutation, b: SitePermutation) -> Result<SiteCell> {
        if src.source_len() != dst.source_len() || src.target_len() != dst.target_len() {
            return Err(Error::EndpointMismatch("site embeddings with different endpoints".into()));
        }
        if a.len() != src.source_len() || b.len() != src.target_len() {
            return Err(Error::EndpointMismatch("permutations of the wrong site sets".into()));
        }
        let lhs = src.permuted(&SitePermutation::identity(a.len()), &b);
        let rhs = dst.permuted(&a, &SitePermutation::identity(b.len()));
        if lhs != rhs {
            return Err(Error::Model("site square does not commute".into()));
        }
        Ok(SiteCell { src, dst, a, b })
    }

    /// `ε1 := b ∘ ε0 ∘ a⁻¹` makes any triple a cell.
    pub fn completing(src: SiteEmbedding, a: SitePermutation, b: SitePermutation) -> Result<SiteCell> {
        let dst = src.permuted(&a.inverse(), &b);
        SiteCell::new(src, dst, a, b)
    }

    pub fn identity(eps: &SiteEmbedding) -> SiteCell {
        SiteCell {
            src: eps.clone(),
            dst: eps.clone(),
            a: SitePermutation::identity(eps.source_len()),
            b: SitePermutation::identity(eps.target_len()),
        }
    }

    /// Site data of a site-compatible interval cell.
    pub fn from_interval(cell: &IntervalTwoCell, src: &SiteSet, tgt: &SiteSet) -> Result<SiteCell> {
        SiteCell::new(
            SiteEmbedding::from_pl(cell.src(), src, tgt)?,
            SiteEmbedding::from_pl(cell.dst(), src, tgt)?,
            SitePermutation::from_diffeo(cell.a(), src)?,
            SitePermutation::from_diffeo(cell.b(), tgt)?,
        )
    }

    pub fn src(&self) -> &SiteEmbedding {
        &self.src
    }

    pub fn dst(&self) -> &SiteEmbedding {
        &self.dst
    }

    pub fn a(&self) -> &SitePermutation {
        &self.a
    }

    pub fn b(&self) -> &SitePermutation {
        &self.b
    }
}

/// `(a, b0) × (b1, c) ↦ (a, c ∘ (b1⁻¹ ∘ b0)^{δ0})`.
pub fn site_hcompose(f: &SiteCell, g: &SiteCell) -> Result<SiteCell> {
    let src = g.src.after(&f.src)?;
    let dst = g.dst.after(&f.dst)?;
    let core = g.a.inverse().after(&f.b).transport(&g.src)?;
    SiteCell::new(src, dst, f.a.clone(), g.b.after(&core))
        .map_err(|_| Error::Internal("site horizontal composite does not commute".into()))
}

/// The image `(𝔞(a), 𝔞(b))` of a site cell between the induced homs.
#[derive(Clone, Debug)]
pub struct QuantizedCell {
    pub phi0: AlgHom,
    pub phi1: AlgHom,
    pub a: Unit,
    pub b: Unit,
    pub certified: Option<TwoCell>,
}

pub fn quantize_site_cell(
    cell: &SiteCell,
    src: &CarAlgebra,
    tgt: &CarAlgebra,
    cache: &mut WitnessCache,
) -> Result<QuantizedCell> {
    let phi0 = induced_site_hom(&cell.src, src, tgt)?;
    let phi1 = induced_site_hom(&cell.dst, src, tgt)?;
    let a = cache.get(&cell.a, src)?;
    let b = cache.get(&cell.b, tgt)?;
    let certified = check_two_cell(&phi0, &phi1, &a, &b)?.valid();
    Ok(QuantizedCell { phi0, phi1, a, b, certified })
}

pub fn quantize_interval_cell(
    cell: &IntervalTwoCell,
    src: &CarAlgebra,
    tgt: &CarAlgebra,
    cache: &mut WitnessCache,
) -> Result<QuantizedCell> {
    quantize_site_cell(&SiteCell::from_interval(cell, src.sites(), tgt.sites())?, src, tgt, cache)
}

#[derive(Clone, Debug)]
pub struct TwoFunctorReport {
    /// Images of `f`, `g` and of their composite are algebra 2-cells.
    pub images_certified: bool,
    /// `λ` with `𝔞(c(b1⁻¹b0)^{δ0}) = λ D0(𝐛1⁻¹𝐛0) 𝐜`.
    pub literal_scalar: Option<Scalar>,
    pub literal_on_the_nose: bool,
    /// `λ` with `𝔞(c(b1⁻¹b0)^{δ0}) = λ D0(𝐛0𝐛1⁻¹) 𝐜`.
    pub exchanged_scalar: Option<Scalar>,
    /// `λ` with `𝔞(c(b1⁻¹b0)^{δ0}) = λ 𝐜 D1(𝐛1⁻¹𝐛0)`.
    pub diagram_scalar: Option<Scalar>,
    /// The image of the composite equals the composite of images between identical homs, up to center.
    pub hcompose_up_to_center: bool,
    pub hcompose_on_the_nose: bool,
    /// `𝐛0` and `𝐛1` commute up to a scalar.
    pub b_commute: bool,
}

impl TwoFunctorReport {
    pub fn literal_holds(&self) -> bool {
        self.literal_scalar.is_some()
    }
}

/// Pushes `f: I→J` and `g: J→K` through the quantization and compares composites.
pub fn two_functor_check(
    f: &SiteCell,
    g: &SiteCell,
    cars: [&CarAlgebra; 3],
    cache: &mut WitnessCache,
) -> Result<TwoFunctorReport> {
    let [ci, cj, ck] = cars;
    let composite = site_hcompose(f, g)?;
    let qf = quantize_site_cell(f, ci, cj, cache)?;
    let qg = quantize_site_cell(g, cj, ck, cache)?;
    let qc = quantize_site_cell(&composite, ci, ck, cache)?;
    let images_certified = qf.certified.is_some() && qg.certified.is_some() && qc.certified.is_some();

    let (b0, b1, c) = (&qf.b, &qg.a, &qg.b);
    let (d0, d1) = (&qg.phi0, &qg.phi1);
    let lhs = &qc.b;
    let literal = d0.apply_unit(&b1.inv().mul(b0)?)?.mul(c)?;
    let exchanged = d0.apply_unit(&b0.mul(&b1.inv())?)?.mul(c)?;
    let diagram = c.mul(&d1.apply_unit(&b1.inv().mul(b0)?)?)?;

    let (hcompose_up_to_center, hcompose_on_the_nose) = match (&qf.certified, &qg.certified, &qc.certified) {
        (Some(cf), Some(cg), Some(cc)) => {
            let h = hcompose(cf, cg)?;
            let same_homs = h.src() == cc.src() && h.dst() == cc.dst();
            let a_equal = h.a() == cc.a();
            let ratio = scalar_ratio(cc.b(), h.b());
            (same_homs && a_equal && ratio.is_some(), same_homs && a_equal && h.b() == cc.b())
        }
        _ => (false, false),
    };
    Ok(TwoFunctorReport {
        images_certified,
        literal_scalar: scalar_ratio(lhs, &literal),
        literal_on_the_nose: lhs == &literal,
        exchanged_scalar: scalar_ratio(lhs, &exchanged),
        diagram_scalar: scalar_ratio(lhs, &diagram),
        hcompose_up_to_center,
        hcompose_on_the_nose,
        b_commute: scalar_ratio(&b0.mul(b1)?, &b1.mul(b0)?).is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_cells() {
        let c1 = CarAlgebra::on_sites(1).unwrap();
        let c2 = CarAlgebra::on_sites(2).unwrap();
        let e = SiteEmbedding::new(vec![1], 2).unwrap();
        let d = SiteEmbedding::identity(2);
        let mut cache = WitnessCache::default();
        let r = two_functor_check(&SiteCell::identity(&e), &SiteCell::identity(&d), [&c1, &c2, &c2], &mut cache).unwrap();
        assert!(r.images_certified && r.literal_on_the_nose && r.hcompose_on_the_nose);
    }

    #[test]
    fn transported_swap() {
        let c2 = CarAlgebra::on_sites(2).unwrap();
        let swap = SitePermutation::transposition(2, 0, 1);
        let id = SiteEmbedding::identity(2);
        let f = SiteCell::new(id.clone(), id.clone(), swap.clone(), swap.clone()).unwrap();
        let g = SiteCell::identity(&id);
        let mut cache = WitnessCache::default();
        let r = two_functor_check(&f, &g, [&c2, &c2, &c2], &mut cache).unwrap();
        assert!(r.images_certified && r.hcompose_up_to_center && r.literal_holds());
    }

    #[test]
    fn completing_cells_commute() {
        let e = SiteEmbedding::new(vec![0, 2], 3).unwrap();
        let a = SitePermutation::transposition(2, 0, 1);
        let b = SitePermutation::new(vec![1, 2, 0]).unwrap();
        let cell = SiteCell::completing(e, a, b).unwrap();
        assert_eq!(cell.dst().image(), &[0, 1]);
    }
}
