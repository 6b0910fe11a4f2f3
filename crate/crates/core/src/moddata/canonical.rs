//! Canonical serialization of modular data up to relabeling.
//!
//! The canonical form is the lexicographically smallest byte string
//! `θ_{π(0)} … θ_{π(r−1)} S̃_{π(0)π(0)} … S̃_{π(r−1)π(r−1)}` (each value in the
//! textual value grammar, newline-terminated) over all permutations `π` with
//! `π(0) = 0`. Since twists come first, only permutations that sort the
//! twists can be minimal, so the search runs over reorderings inside blocks
//! of equal twist.

use std::collections::BTreeSet;

use super::{ModularData, ModularDataError};

pub const DEFAULT_CANONICAL_RANK_BOUND: usize = 8;

pub fn canonical_form(md: &ModularData) -> Result<Vec<u8>, ModularDataError> {
    canonical_form_with_bound(md, DEFAULT_CANONICAL_RANK_BOUND)
}

pub fn canonical_form_with_bound(md: &ModularData, bound: usize) -> Result<Vec<u8>, ModularDataError> {
    let rank = md.rank();
    if rank > bound {
        return Err(ModularDataError::RankTooLarge { rank, bound });
    }
    let twist_text: Vec<String> = md.twists().iter().map(ToString::to_string).collect();
    let s_text: Vec<Vec<String>> = md
        .s_tilde()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();

    // Replace strings by their rank in sorted order; comparing id vectors is
    // then the same as comparing the newline-joined byte strings.
    let vocab: Vec<&String> = twist_text
        .iter()
        .chain(s_text.iter().flatten())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let id = |s: &String| vocab.binary_search(&s).unwrap();
    let twist_ids: Vec<usize> = twist_text.iter().map(id).collect();
    let s_ids: Vec<Vec<usize>> = s_text.iter().map(|row| row.iter().map(id).collect()).collect();

    let mut order: Vec<usize> = (1..rank).collect();
    order.sort_by_key(|&i| (twist_ids[i], i));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match blocks.last_mut() {
            Some(b) if twist_ids[b[0]] == twist_ids[i] => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }

    let key = |perm: &[usize]| -> Vec<usize> {
        perm.iter()
            .flat_map(|&i| perm.iter().map(move |&j| (i, j)))
            .map(|(i, j)| s_ids[i][j])
            .collect()
    };

    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut perm = vec![0];
    search(&blocks, 0, &mut perm, &mut |p| {
        let k = key(p);
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, p.to_vec()));
        }
    });
    let (_, perm) = best.expect("at least one relabeling");

    let mut out = Vec::new();
    for &i in &perm {
        out.extend_from_slice(twist_text[i].as_bytes());
        out.push(b'\n');
    }
    for &i in &perm {
        for &j in &perm {
            out.extend_from_slice(s_text[i][j].as_bytes());
            out.push(b'\n');
        }
    }
    Ok(out)
}

/// Visits every concatenation of per-block permutations.
fn search(blocks: &[Vec<usize>], depth: usize, perm: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if depth == blocks.len() {
        visit(perm);
        return;
    }
    let mut block = blocks[depth].clone();
    permute(&mut block, 0, &mut |arr| {
        let len = perm.len();
        perm.extend_from_slice(arr);
        search(blocks, depth + 1, perm, visit);
        perm.truncate(len);
    });
}

fn permute(arr: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == arr.len() {
        visit(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, visit);
        arr.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::GramMatrix;

    fn lattice(rows: &[&[i64]]) -> ModularData {
        ModularData::from_lattice(&GramMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()).unwrap()
    }

    #[test]
    fn invariant_under_relabeling() {
        let md = lattice(&[&[2, 1], &[1, 2]]);
        let swapped = md.relabeled(&[0, 2, 1]).unwrap();
        assert_eq!(canonical_form(&md).unwrap(), canonical_form(&swapped).unwrap());

        let semion = lattice(&[&[2]]);
        assert_eq!(
            canonical_form(&semion).unwrap(),
            canonical_form(&semion.relabeled(&[0, 1]).unwrap()).unwrap()
        );
    }

    #[test]
    fn distinguishes_theories() {
        let semion = canonical_form(&lattice(&[&[2]])).unwrap();
        let anti = canonical_form(&lattice(&[&[-2]])).unwrap();
        assert_ne!(semion, anti);
        let toric = canonical_form(&lattice(&[&[0, 2], &[2, 0]])).unwrap();
        let double_semion = canonical_form(&lattice(&[&[2, 0], &[0, 2]])).unwrap();
        assert_ne!(toric, double_semion);
    }

    #[test]
    fn semion_bytes() {
        let bytes = canonical_form(&lattice(&[&[2]])).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "e(0/1)\ne(1/4)\n1\n1\n1\n-1\n");
    }

    #[test]
    fn rank_bound() {
        let md = lattice(&[&[2, 1], &[1, 2]]);
        assert_eq!(
            canonical_form_with_bound(&md, 2),
            Err(ModularDataError::RankTooLarge { rank: 3, bound: 2 })
        );
    }
}
