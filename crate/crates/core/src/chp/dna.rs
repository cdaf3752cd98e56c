//! DNA strings: the ordered chord angles of the contact path from `P1` to the
//! central disk.
//!
//! Every chord angle `xi_j` equals some border angle plus `pi/3`, so a DNA is
//! a permutation of the border's building blocks and is written as letters
//! (`a` = smallest block). Two symmetries act on DNAs letter-wise, position by
//! position:
//!
//! * the mirror through `P1` and the origin reverses the letter order;
//! * rotating another occupied vertex onto `P1` shifts the blocks by the
//!   vertex angle `tau`: blocks at or above `tau` move down by `tau`, the
//!   ones below wrap around to the top, i.e. a cyclic relabeling.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Sides;

use super::border::{solve_border, BorderSolution, ANGLE_TOL};
use super::count::{count_configurations, CountInput};

/// Letter permutations induced by the border symmetries.
#[derive(Debug, Clone, Default)]
pub(crate) struct LetterSymmetry {
    /// One map per occupied vertex; the first is the identity.
    rotations: Vec<Vec<u8>>,
    reflection: Vec<u8>,
    /// Closure of rotations and reflection.
    group: Vec<Vec<u8>>,
}

impl LetterSymmetry {
    pub(crate) fn new(blocks: &[f64], occupied: &[f64], span: f64) -> Result<Self> {
        let l = blocks.len();
        let tol = 1e3 * ANGLE_TOL;
        let reflection: Vec<u8> = (0..l).map(|i| (l - 1 - i) as u8).collect();
        for i in 0..l {
            if (blocks[i] + blocks[l - 1 - i] - span).abs() > tol {
                return Err(Error::PreconditionViolated(
                    "border blocks are not mirror symmetric".into(),
                ));
            }
        }

        let mut rotations = Vec::with_capacity(occupied.len());
        for &tau in occupied {
            let below = blocks.iter().filter(|&&b| b < tau - ANGLE_TOL).count();
            let map: Vec<u8> = (0..l).map(|i| ((i + l - below) % l) as u8).collect();
            for i in 0..l {
                let shifted = if i < below { blocks[i] - tau + FRAC_PI_3 } else { blocks[i] - tau };
                if (shifted - blocks[map[i] as usize]).abs() > tol {
                    return Err(Error::PreconditionViolated(format!(
                        "vertex rotation by {tau} does not preserve the border blocks"
                    )));
                }
            }
            rotations.push(map);
        }

        let mut gens = rotations.clone();
        gens.push(reflection.clone());
        let group = closure(&gens, l);
        Ok(LetterSymmetry { rotations, reflection, group })
    }

    /// 1 if the mirror image is already a vertex-rotation image, else 2.
    pub(crate) fn eta(&self) -> u8 {
        let l = self.reflection.len();
        let rot_group = closure(&self.rotations, l);
        if rot_group.contains(&self.reflection) {
            1
        } else {
            2
        }
    }

    pub(crate) fn group(&self) -> &[Vec<u8>] {
        &self.group
    }

    pub(crate) fn reflection(&self) -> &[u8] {
        &self.reflection
    }

    pub(crate) fn rotations(&self) -> &[Vec<u8>] {
        &self.rotations
    }
}

fn closure(gens: &[Vec<u8>], l: usize) -> Vec<Vec<u8>> {
    let identity: Vec<u8> = (0..l as u8).collect();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let c: Vec<u8> = g.iter().map(|&x| h[x as usize]).collect();
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// An ordered sequence of chord angles from `P1` to the center.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dna {
    pub xi: Vec<f64>,
    pub letters: String,
}

impl fmt::Display for Dna {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters)
    }
}

pub(crate) fn letter_char(i: u8) -> char {
    (b'a' + i) as char
}

impl Dna {
    /// Builds a DNA from its letter string, taking angles from `border`.
    pub fn from_letters(letters: &str, border: &BorderSolution) -> Result<Self> {
        let idx = parse_letters(letters)?;
        Self::from_indices(&idx, border)
    }

    pub(crate) fn from_indices(idx: &[u8], border: &BorderSolution) -> Result<Self> {
        check_multiset(idx, border)?;
        let xi = idx.iter().map(|&i| border.blocks[i as usize] + FRAC_PI_3).collect();
        Ok(Dna { xi, letters: idx.iter().map(|&i| letter_char(i)).collect() })
    }

    /// Classifies raw chord angles against the border blocks.
    pub fn from_xi(xi: &[f64], border: &BorderSolution, tol: f64) -> Result<Self> {
        let idx = xi
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                border
                    .letter_of(x - FRAC_PI_3, tol)
                    .ok_or(Error::ConjectureViolation { step: j + 1, angle: x })
            })
            .collect::<Result<Vec<u8>>>()?;
        check_multiset(&idx, border)?;
        Ok(Dna { xi: xi.to_vec(), letters: idx.iter().map(|&i| letter_char(i)).collect() })
    }

    pub fn indices(&self) -> Vec<u8> {
        self.letters.bytes().map(|b| b - b'a').collect()
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }
}

fn parse_letters(letters: &str) -> Result<Vec<u8>> {
    letters
        .bytes()
        .map(|b| {
            if b.is_ascii_lowercase() {
                Ok(b - b'a')
            } else {
                Err(Error::Parse(format!("DNA letters must be a-z, got `{letters}`")))
            }
        })
        .collect()
}

fn check_multiset(idx: &[u8], border: &BorderSolution) -> Result<()> {
    if idx.len() != border.k {
        return Err(Error::InconsistentDna(format!(
            "expected {} letters, got {}",
            border.k,
            idx.len()
        )));
    }
    let mut counts = vec![0usize; border.blocks.len()];
    for &i in idx {
        match counts.get_mut(i as usize) {
            Some(c) => *c += 1,
            None => {
                return Err(Error::InconsistentDna(format!(
                    "letter `{}` is not a building block",
                    letter_char(i)
                )))
            }
        }
    }
    if counts != border.degeneracies {
        return Err(Error::InconsistentDna(format!(
            "letter multiplicities {counts:?} differ from degeneracies {:?}",
            border.degeneracies
        )));
    }
    Ok(())
}

/// Mirror image through the axis `P1`-origin: `xi -> pi - xi - 2 pi / sigma`,
/// letters reversed.
pub fn reflect_dna(dna: &Dna, sigma: Sides) -> Dna {
    let shift = 2.0 * sigma.half_angle();
    let xi = dna.xi.iter().map(|x| PI - x - shift).collect();
    let top = dna.letters.bytes().max().unwrap_or(b'a');
    let letters = dna.letters.bytes().map(|b| (top - b + b'a') as char).collect();
    Dna { xi, letters }
}

fn apply(map: &[u8], idx: &[u8]) -> Vec<u8> {
    idx.iter().map(|&i| map[i as usize]).collect()
}

/// Lexicographically smallest letter string over the symmetry orbit.
pub fn canonicalize_dna(dna: &Dna, border: &BorderSolution) -> Result<Dna> {
    let idx = dna.indices();
    check_multiset(&idx, border)?;
    // multiset {xi} must match {phi + pi/3}
    for (j, (x, &i)) in dna.xi.iter().zip(&idx).enumerate() {
        if (x - FRAC_PI_3 - border.blocks[i as usize]).abs() > ANGLE_TOL {
            return Err(Error::InconsistentDna(format!(
                "angle {x} at position {} does not match letter `{}`",
                j + 1,
                letter_char(i)
            )));
        }
    }
    let best = canonical_indices(&idx, border);
    Dna::from_indices(&best, border)
}

pub(crate) fn canonical_indices(idx: &[u8], border: &BorderSolution) -> Vec<u8> {
    border
        .symmetry
        .group()
        .iter()
        .map(|g| apply(g, idx))
        .min()
        .unwrap_or_else(|| idx.to_vec())
}

/// Images of `dna` under every vertex rotation and the reflection.
pub fn orbit(dna: &Dna, border: &BorderSolution) -> Result<Vec<Dna>> {
    let idx = dna.indices();
    let mut imgs: BTreeSet<Vec<u8>> = BTreeSet::new();
    for g in border.symmetry.group() {
        imgs.insert(apply(g, &idx));
    }
    imgs.into_iter().map(|v| Dna::from_indices(&v, border)).collect()
}

/// Letter string of the DNA obtained by bringing the `t`-th occupied vertex
/// to `P1`.
pub fn rotate_dna(dna: &Dna, border: &BorderSolution, t: usize) -> Result<Dna> {
    let map = border.symmetry.rotations().get(t).ok_or_else(|| {
        Error::PreconditionViolated(format!("only {} occupied vertices", border.n_v))
    })?;
    Dna::from_indices(&apply(map, &dna.indices()), border)
}

/// Letter-level reflection map of `border` (block `i` goes to the returned
/// index).
pub fn reflection_map(border: &BorderSolution) -> Vec<u8> {
    border.symmetry.reflection().to_vec()
}

/// Lexicographic successor of a multiset permutation, in place.
fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub const DEFAULT_CAP: usize = 100_000;

/// Lowest-order DNA: letters in ascending order.
pub fn min_dna(border: &BorderSolution) -> Dna {
    let idx: Vec<u8> = border
        .degeneracies
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i as u8, n))
        .collect();
    Dna::from_indices(&idx, border).expect("sorted blocks form a valid DNA")
}

/// Every inequivalent DNA for `(sigma, k)`, canonical representatives in
/// lexicographic order.
pub fn enumerate_dnas(sigma: Sides, k: usize) -> Result<Vec<Dna>> {
    enumerate_dnas_capped(sigma, k, DEFAULT_CAP)
}

pub fn enumerate_dnas_capped(sigma: Sides, k: usize, cap: usize) -> Result<Vec<Dna>> {
    let border = solve_border(sigma, k)?;
    enumerate_for(&border, cap)
}

pub fn enumerate_for(border: &BorderSolution, cap: usize) -> Result<Vec<Dna>> {
    let expected = count_configurations(&CountInput::from_border(border));
    if expected > cap.into() {
        return Err(Error::CapExceeded { count: expected.to_string(), cap });
    }
    let group = border.symmetry.group();
    let mut perm = min_dna(border).indices();
    let mut out = Vec::new();
    loop {
        // a permutation is kept iff it is the minimum of its own orbit
        if group.iter().all(|g| apply(g, &perm) >= perm) {
            out.push(Dna::from_indices(&perm, border)?);
            if out.len() > cap {
                return Err(Error::CapExceeded { count: format!(">{cap}"), cap });
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dodecagon(k: usize) -> BorderSolution {
        solve_border(Sides::Regular(12), k).unwrap()
    }

    #[test]
    fn reflect_swaps_letters() {
        let b = dodecagon(4);
        let dna = Dna::from_letters("aabb", &b).unwrap();
        let r = reflect_dna(&dna, b.sigma);
        assert_eq!(r.letters, "bbaa");
        let expect = [PI / 2.0, PI / 2.0, PI / 3.0, PI / 3.0];
        for (x, e) in r.xi.iter().zip(expect) {
            assert!((x - e).abs() < 1e-12);
        }
        let back = reflect_dna(&r, b.sigma);
        assert_eq!(back.letters, dna.letters);
        for (x, e) in back.xi.iter().zip(&dna.xi) {
            assert!((x - e).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_form() {
        let b = dodecagon(4);
        let dna = Dna::from_letters("bbaa", &b).unwrap();
        assert_eq!(canonicalize_dna(&dna, &b).unwrap().letters, "aabb");
        let c = Dna::from_letters("abba", &b).unwrap();
        let cc = canonicalize_dna(&c, &b).unwrap();
        assert_eq!(cc.letters, "abba");
        assert_eq!(canonicalize_dna(&cc, &b).unwrap(), cc);
    }

    #[test]
    fn inconsistent_dna_is_rejected() {
        let b = dodecagon(4);
        assert!(matches!(Dna::from_letters("aaab", &b), Err(Error::InconsistentDna(_))));
        assert!(matches!(Dna::from_letters("aab", &b), Err(Error::InconsistentDna(_))));
        let mut dna = Dna::from_letters("abab", &b).unwrap();
        dna.xi[0] += 1e-6;
        assert!(matches!(canonicalize_dna(&dna, &b), Err(Error::InconsistentDna(_))));
    }

    #[test]
    fn foreign_angle_is_a_conjecture_violation() {
        let b = dodecagon(3);
        let xi = [b.blocks[0] + FRAC_PI_3, 0.1234, b.blocks[2] + FRAC_PI_3];
        assert!(matches!(
            Dna::from_xi(&xi, &b, 1e-9),
            Err(Error::ConjectureViolation { step: 2, .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_dnas(Sides::Regular(12), 5).unwrap().len(), 15);
        assert_eq!(enumerate_dnas(Sides::Regular(18), 3).unwrap().len(), 1);
        assert_eq!(enumerate_dnas(Sides::Circle, 5).unwrap().len(), 12);
        let two = enumerate_dnas(Sides::Regular(12), 2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].letters, "ab");
        let four: Vec<String> =
            enumerate_dnas(Sides::Regular(12), 4).unwrap().into_iter().map(|d| d.letters).collect();
        assert_eq!(four, ["aabb", "abab", "abba"]);
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        let b = solve_border(Sides::Regular(18), 5).unwrap();
        let all = enumerate_for(&b, DEFAULT_CAP).unwrap();
        assert!(all.windows(2).all(|w| w[0].letters < w[1].letters));
        for d in &all {
            assert_eq!(canonicalize_dna(d, &b).unwrap().letters, d.letters);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_dnas_capped(Sides::Regular(30), 8, 1000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 1000, .. }));
    }

    #[test]
    fn next_permutation_counts_multiset() {
        let mut v = vec![0u8, 0, 1, 1, 2];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 30);
    }

    #[test]
    fn dodecagon_rotation_equals_reflection() {
        let b = dodecagon(6);
        let dna = Dna::from_letters("aabbab", &b).unwrap();
        let rot = rotate_dna(&dna, &b, 1).unwrap();
        assert_eq!(rot.letters, reflect_dna(&dna, b.sigma).letters);
    }
}
