//! `pd_i`, `st_i`, `rg_i`, `in_i` and `In` of collapses with quadruple data.

use crate::diagram::{Diagram, Kind, Quad};
use crate::error::{DiagramError, Result};

/// The record returned by [`accessors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Accessors {
    pub st: Option<Diagram>,
    pub rg: Option<Diagram>,
    pub pd: Diagram,
    pub in_set: Vec<u32>,
}

fn quads_of(rho: &Diagram) -> Result<&[Quad]> {
    match rho.kind() {
        Kind::D(_, q, _) if !q.is_empty() => Ok(q),
        _ => Err(DiagramError::NotADQTerm(rho.to_string())),
    }
}

fn quad_for(i: u32, rho: &Diagram) -> Result<&Quad> {
    quads_of(rho)?
        .iter()
        .find(|q| i <= q.j)
        .ok_or_else(|| DiagramError::NoQuadForIndex { index: i, term: rho.to_string() })
}

/// `In(rho)`.
pub fn in_set(rho: &Diagram) -> Vec<u32> {
    rho.quads().iter().map(|q| q.j).collect()
}

/// Whether `i` is in `In(rho)`; false for anything outside `D^Q`.
pub fn has_index(i: u32, rho: &Diagram) -> bool {
    rho.quads().iter().any(|q| q.j == i)
}

/// `pd_i(rho)`.
pub fn pd(i: u32, rho: &Diagram) -> Result<Diagram> {
    Ok(quad_for(i, rho)?.tau.clone())
}

/// `in_i(x)` as the pair `(st_i, rg_i)`. `pi` and terms whose inherited pair is empty give `None`.
pub fn in_pair(i: u32, x: &Diagram) -> Result<Option<(Diagram, Diagram)>> {
    let mut cur = x.clone();
    loop {
        if cur.is_pi() {
            return Ok(None);
        }
        let q = quad_for(i, &cur)?;
        if q.j == i {
            return Ok(Some((q.nu.clone(), q.kappa.clone())));
        }
        cur = q.tau.clone();
    }
}

/// `st_i(rho)`, `None` when undefined.
pub fn st(i: u32, rho: &Diagram) -> Result<Option<Diagram>> {
    quads_of(rho)?;
    Ok(in_pair(i, rho)?.map(|p| p.0))
}

/// `rg_i(rho)`, `None` when undefined.
pub fn rg(i: u32, rho: &Diagram) -> Result<Option<Diagram>> {
    quads_of(rho)?;
    Ok(in_pair(i, rho)?.map(|p| p.1))
}

/// All accessors of `rho` at index `i`.
pub fn accessors(rho: &Diagram, i: u32) -> Result<Accessors> {
    let pd = pd(i, rho)?;
    let pair = in_pair(i, rho)?;
    Ok(Accessors {
        st: pair.as_ref().map(|p| p.0.clone()),
        rg: pair.map(|p| p.1),
        pd,
        in_set: in_set(rho),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho0() -> Diagram {
        Diagram::d_unchecked(
            Diagram::pi(),
            vec![Quad::new(3, Diagram::pi(), Diagram::pi(), Diagram::zero())],
            Diagram::zero(),
        )
    }

    #[test]
    fn direct_clause() {
        let a = accessors(&rho0(), 3).unwrap();
        assert_eq!(a.st, Some(Diagram::zero()));
        assert_eq!(a.rg, Some(Diagram::pi()));
        assert_eq!(a.pd, Diagram::pi());
        assert_eq!(a.in_set, vec![3]);
    }

    #[test]
    fn inherited_from_pi_is_undefined() {
        let a = accessors(&rho0(), 2).unwrap();
        assert_eq!(a.pd, Diagram::pi());
        assert_eq!(a.st, None);
        assert_eq!(a.rg, None);
    }

    #[test]
    fn in_set_lists_indices() {
        let r1 = rho0();
        let d = Diagram::d_unchecked(
            r1.clone(),
            vec![
                Quad::new(2, r1.clone(), r1.clone(), Diagram::zero()),
                Quad::new(3, Diagram::pi(), r1.clone(), Diagram::zero()),
            ],
            Diagram::zero(),
        );
        assert_eq!(in_set(&d), vec![2, 3]);
        assert!(accessors(&Diagram::zero(), 2).is_err());
    }

    #[test]
    fn inherited_through_chain() {
        let r1 = Diagram::d_unchecked(
            Diagram::pi(),
            vec![
                Quad::new(2, Diagram::pi(), Diagram::pi(), Diagram::omega()),
                Quad::new(3, Diagram::pi(), Diagram::pi(), Diagram::zero()),
            ],
            Diagram::zero(),
        );
        let d = Diagram::d_unchecked(
            r1.clone(),
            vec![Quad::new(3, Diagram::pi(), r1.clone(), Diagram::zero())],
            Diagram::zero(),
        );
        assert_eq!(pd(2, &d).unwrap(), r1);
        assert_eq!(st(2, &d).unwrap(), Some(Diagram::omega()));
        assert_eq!(rg(2, &d).unwrap(), Some(Diagram::pi()));
    }
}
