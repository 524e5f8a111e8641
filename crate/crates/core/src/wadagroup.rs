//! Wada group presentations of diagrams, abelianization, homomorphism
//! counting into finite groups, and the integer braid representation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{integer_kernel, smith_normal_form, FiniteGroup, IntMatrix, SmithForm, Sym};
use crate::biquandle::WadaPair;
use crate::diagram::{BraidLetter, Diagram, Endpoint, Sign, VirtualBraidWord};
use crate::error::{Error, Result};

/// Freely reduced word in generator indices, stored as syllables `g^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, k) in syllables {
            if k == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, e)) if *h == g => {
                    *e += k;
                    if *e == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, k)),
            }
        }
        Word(out)
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, k)| k.unsigned_abs() as usize).sum()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, k)| (g, -k)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied())
    }

    /// Conjugates the word until its first and last syllables do not cancel.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = self.0.clone();
        loop {
            if s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
                let (g, k) = s.pop().unwrap();
                s[0] = (g, s[0].1 + k);
                if s[0].1 == 0 {
                    s.remove(0);
                }
                continue;
            }
            return Word(s);
        }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0
            .iter()
            .filter(|s| s.0 == g)
            .map(|s| s.1.unsigned_abs() as usize)
            .sum()
    }

    pub fn generators(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().map(|s| s.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn substitute(&self, g: usize, w: &Word) -> Word {
        let mut out = Vec::new();
        for &(h, k) in &self.0 {
            if h == g {
                let piece = if k > 0 { w.clone() } else { w.inverse() };
                for _ in 0..k.abs() {
                    out.extend_from_slice(&piece.0);
                }
            } else {
                out.push((h, k));
            }
        }
        Word::new(out)
    }

    fn relabel(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|&(g, k)| (f(g), k)).collect())
    }

    pub fn eval(&self, images: &[usize], group: &FiniteGroup) -> usize {
        self.0.iter().fold(group.identity(), |acc, &(g, k)| {
            group.mul(acc, group.pow(images[g], k))
        })
    }
}

/// A finite group presentation with named generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g) {
                return Err(Error::Precondition(format!("duplicate generator {g}")));
            }
        }
        if let Some(bad) = relators
            .iter()
            .flat_map(|r| r.0.iter())
            .find(|s| s.0 >= generators.len())
        {
            return Err(Error::Precondition(format!("generator index {} out of range", bad.0)));
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn fmt_word(&self, w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if w.is_empty() {
            return write!(f, "1");
        }
        for (i, &(g, k)) in w.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.generators[g])?;
            if k != 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(f, "{}", if i == 0 { " " } else { ", " })?;
            self.fmt_word(r, f)?;
        }
        write!(f, ">")
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_word(text: &str, names: &[String], index: usize) -> Result<Word> {
    let mut syl = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => {
                let k: i64 = e
                    .parse()
                    .map_err(|_| Error::parse(index, token, "bad exponent"))?;
                (n, k)
            }
            None => (token, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::parse(index, token, "unknown generator"))?;
        syl.push((g, exp));
    }
    Ok(Word::new(syl))
}

/// Parses `<a,y | y a y^-1 a^-2, a^55>`; a relator may also be written as an
/// equation `lhs = rhs`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let t = text.trim();
    let inner = t
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| Error::parse(0, t, "expected <generators | relators>"))?;
    let (gens, rels) = inner
        .split_once('|')
        .ok_or_else(|| Error::parse(0, t, "missing |"))?;
    let mut names = Vec::new();
    for g in gens.split(',') {
        let g = g.trim();
        if g.is_empty() && gens.trim().is_empty() {
            continue;
        }
        if !is_name(g) {
            return Err(Error::parse(0, g, "bad generator name"));
        }
        if names.iter().any(|n: &String| n == g) {
            return Err(Error::parse(0, g, "duplicate generator"));
        }
        names.push(g.to_string());
    }
    let mut relators = Vec::new();
    if !rels.trim().is_empty() {
        for (i, r) in rels.split(',').enumerate() {
            let index = i + 1;
            let w = match r.split_once('=') {
                Some((l, rhs)) => {
                    if rhs.contains('=') {
                        return Err(Error::parse(index, r.trim(), "more than one ="));
                    }
                    let l = parse_word(l, &names, index)?;
                    let rhs = parse_word(rhs, &names, index)?;
                    l.concat(&rhs.inverse())
                }
                None => {
                    if r.trim().is_empty() {
                        return Err(Error::parse(index, "", "empty relator"));
                    }
                    parse_word(r, &names, index)?
                }
            };
            relators.push(w);
        }
    }
    Presentation::new(names, relators)
}

impl FromStr for Presentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

fn wada_word(w: &crate::algebra::FreeWord, x: usize, y: usize) -> Word {
    Word::new(w.syllables().iter().map(|&(s, k)| {
        let g = match s {
            Sym::X => x,
            Sym::Y => y,
        };
        (g, k as i64)
    }))
}

/// One generator `g<e>` per edge and, per crossing, the relators
/// `out0 · u(in0, in1)⁻¹` and `out1 · v(in0, in1)⁻¹`.
pub fn presentation_of_pair(d: &Diagram, pair: &WadaPair) -> Presentation {
    let generators = (0..d.edge_count()).map(|e| format!("g{e}")).collect();
    let mut relators = Vec::new();
    for c in d.crossings() {
        let [i0, i1] = c.inputs();
        let [o0, o1] = c.outputs();
        relators.push(Word::new([(o0, 1)]).concat(&wada_word(&pair.u, i0, i1).inverse()));
        relators.push(Word::new([(o1, 1)]).concat(&wada_word(&pair.v, i0, i1).inverse()));
    }
    Presentation::new(generators, relators).expect("edge generators are in range")
}

pub fn presentation(d: &Diagram, kind: crate::biquandle::WadaKind) -> Presentation {
    presentation_of_pair(d, &WadaPair::of(kind))
}

/// Smith form of the exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> SmithForm {
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| (0..p.generator_count()).map(|g| r.exponent_sum(g)).collect())
        .collect();
    smith_normal_form(&IntMatrix::from_rows(&rows, p.generator_count()))
}

struct HomSearch<'a> {
    group: &'a FiniteGroup,
    relators: &'a [Word],
    /// Relators mentioning each generator.
    touching: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl HomSearch<'_> {
    /// Solves relators with a single unknown generator occurring once and
    /// checks fully assigned ones. `false` on a violated relator.
    fn propagate(&self, images: &mut [Option<usize>]) -> bool {
        let g = self.group;
        loop {
            let mut changed = false;
            for r in self.relators {
                let mut unknown = None;
                let mut many = false;
                for &(h, _) in &r.0 {
                    if images[h].is_none() {
                        match unknown {
                            None => unknown = Some(h),
                            Some(u) if u == h => {}
                            Some(_) => many = true,
                        }
                    }
                }
                if many {
                    continue;
                }
                match unknown {
                    None => {
                        let v = r.0.iter().fold(g.identity(), |acc, &(h, k)| {
                            g.mul(acc, g.pow(images[h].unwrap(), k))
                        });
                        if v != g.identity() {
                            return false;
                        }
                    }
                    Some(u) => {
                        if r.occurrences(u) != 1 {
                            continue;
                        }
                        let j = r.0.iter().position(|s| s.0 == u).unwrap();
                        let prod = |s: &[(usize, i64)]| {
                            s.iter().fold(g.identity(), |acc, &(h, k)| {
                                g.mul(acc, g.pow(images[h].unwrap(), k))
                            })
                        };
                        let a = prod(&r.0[..j]);
                        let b = prod(&r.0[j + 1..]);
                        let ba = g.mul(b, a);
                        images[u] = Some(if r.0[j].1 == 1 { g.inv(ba) } else { ba });
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn count(&self, mut images: Vec<Option<usize>>) -> u64 {
        if !self.propagate(&mut images) {
            return 0;
        }
        let Some(&next) = self.order.iter().find(|&&h| images[h].is_none()) else {
            return 1;
        };
        (0..self.group.order())
            .map(|v| {
                let mut im = images.clone();
                im[next] = Some(v);
                self.count(im)
            })
            .sum()
    }
}

/// Number of homomorphisms from the presented group into `group`.
pub fn hom_count(p: &Presentation, group: &FiniteGroup) -> u64 {
    let n = p.generator_count();
    let mut touching = vec![Vec::new(); n];
    for (i, r) in p.relators.iter().enumerate() {
        for h in r.generators() {
            touching[h].push(i);
        }
    }
    let free = touching.iter().filter(|t| t.is_empty()).count();
    let mut order: Vec<usize> = (0..n).filter(|&h| !touching[h].is_empty()).collect();
    order.sort_by_key(|&h| (std::cmp::Reverse(touching[h].len()), h));
    let search = HomSearch {
        group,
        relators: &p.relators,
        touching,
        order,
    };
    let bound = (group.order() as u64).pow(free as u32);
    let constrained = match search.order.first() {
        None => {
            let mut images = vec![None; n];
            for (h, im) in images.iter_mut().enumerate() {
                if search.touching[h].is_empty() {
                    *im = Some(group.identity());
                }
            }
            search.count(images)
        }
        Some(&first) => (0..group.order())
            .into_par_iter()
            .map(|v| {
                let mut images = vec![None; n];
                for (h, im) in images.iter_mut().enumerate() {
                    if search.touching[h].is_empty() {
                        *im = Some(group.identity());
                    }
                }
                images[first] = Some(v);
                search.count(images)
            })
            .sum(),
    };
    constrained * bound
}

/// Eliminates generators that occur exactly once in some relator, substituting
/// their solution everywhere, until none remain. Generator names are kept.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut gens: Vec<String> = p.generators.clone();
    let mut rels: Vec<Word> = p.relators.iter().map(Word::cyclically_reduced).collect();
    loop {
        rels.retain(|r| !r.is_empty());
        let mut seen = HashSet::new();
        rels.retain(|r| seen.insert(r.clone()));
        // shortest relator first, then the highest generator index
        let mut pick: Option<(usize, usize, usize)> = None;
        for (i, r) in rels.iter().enumerate() {
            for g in r.generators().into_iter().rev() {
                if r.occurrences(g) == 1 {
                    let key = (r.len(), usize::MAX - g, i);
                    if pick.map_or(true, |(l, gi, j)| key < (l, usize::MAX - gi, j)) {
                        pick = Some((r.len(), g, i));
                    }
                    break;
                }
            }
        }
        let Some((_, g, i)) = pick else {
            break;
        };
        let r = rels.remove(i);
        let j = r.0.iter().position(|s| s.0 == g).unwrap();
        // r = A g^e B, so g^e = (B A)⁻¹
        let ba = Word::new(r.0[j + 1..].iter().chain(&r.0[..j]).copied());
        let sol = if r.0[j].1 == 1 { ba.inverse() } else { ba };
        rels = rels
            .iter()
            .map(|w| {
                w.substitute(g, &sol)
                    .relabel(|h| if h > g { h - 1 } else { h })
                    .cyclically_reduced()
            })
            .collect();
        gens.remove(g);
    }
    Presentation::new(gens, rels).expect("relabelled generators are in range")
}

/// Integer matrix of the abelian Wada representation: `w' = M w` maps top
/// colors to bottom colors.
pub fn braid_matrix(w: &VirtualBraidWord) -> IntMatrix {
    let n = w.strands();
    let mut m = IntMatrix::identity(n);
    for l in w.letters() {
        let i = l.index() - 1;
        let mut step = IntMatrix::identity(n);
        let block: [[i64; 2]; 2] = match l {
            BraidLetter::Sigma(_) => [[0, -1], [1, 2]],
            BraidLetter::SigmaInv(_) => [[2, 1], [-1, 0]],
            BraidLetter::Virtual(_) => [[0, 1], [1, 0]],
        };
        for a in 0..2 {
            for b in 0..2 {
                step[(i + a, i + b)] = block[a][b].into();
            }
        }
        m = step.mul(&m);
    }
    m
}

/// Primitive nonzero integer vector fixed by the braid matrix, first nonzero
/// entry positive.
pub fn nonzero_integer_coloring(w: &VirtualBraidWord) -> Vec<i64> {
    let m = braid_matrix(w).sub(&IntMatrix::identity(w.strands()));
    let basis = integer_kernel(&m);
    let v = basis
        .into_iter()
        .next()
        .expect("[1, ..., 1] is a left eigenvector, so M - I is singular");
    let g = v.iter().fold(num_bigint::BigInt::from(0), |a, x| a.gcd(x));
    let mut v: Vec<i64> = v
        .iter()
        .map(|x| (x / &g).to_i64().expect("fixed vector fits in i64"))
        .collect();
    if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Propagates top colors down the braid and reads off an integer coloring of
/// the closure's edges. Fails unless `top` is fixed by the braid matrix.
pub fn braid_coloring(d: &Diagram, w: &VirtualBraidWord, top: &[i64]) -> Result<Vec<i64>> {
    let n = w.strands();
    if top.len() != n {
        return Err(Error::Precondition(format!("expected {n} top colors")));
    }
    let mut colors: Vec<Option<i64>> = vec![None; d.edge_count()];
    let mut set = |e: usize, v: i64| -> Result<()> {
        match colors[e] {
            Some(u) if u != v => Err(Error::Precondition(
                "top colors are not fixed by the braid".into(),
            )),
            _ => {
                colors[e] = Some(v);
                Ok(())
            }
        }
    };
    let mut cur = top.to_vec();
    let mut k = 0;
    for l in w.letters() {
        let i = l.index() - 1;
        let (a, b) = (cur[i], cur[i + 1]);
        match l {
            BraidLetter::Virtual(_) => {
                cur.swap(i, i + 1);
                continue;
            }
            BraidLetter::Sigma(_) => {
                cur[i] = -b;
                cur[i + 1] = a + 2 * b;
            }
            BraidLetter::SigmaInv(_) => {
                cur[i] = 2 * a + b;
                cur[i + 1] = -a;
            }
        }
        let c = &d.crossings()[k];
        k += 1;
        let (tl, tr, bl, br) = match c.sign {
            Sign::Positive => (c.under_in, c.over_in, c.over_out, c.under_out),
            Sign::Negative => (c.over_in, c.under_in, c.under_out, c.over_out),
        };
        set(tl, a)?;
        set(tr, b)?;
        set(bl, cur[i])?;
        set(br, cur[i + 1])?;
    }
    if cur != top {
        return Err(Error::Precondition("top colors are not fixed by the braid".into()));
    }
    // components without classical crossings keep their top color
    let mut at: Vec<usize> = (0..n).collect();
    for l in w.letters() {
        let i = l.index() - 1;
        at.swap(i, i + 1);
    }
    let mut next = vec![0; n];
    for (q, &s) in at.iter().enumerate() {
        next[s] = q;
    }
    let mut visited = vec![false; n];
    let mut component = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut s = start;
        while !visited[s] {
            visited[s] = true;
            s = next[s];
        }
        if let Some(e) = d.edges().iter().position(|e| {
            e.component == component && matches!(e.tail, Endpoint::Free { .. })
        }) {
            set(e, top[start])?;
        }
        component += 1;
    }
    Ok(colors
        .into_iter()
        .map(|c| c.expect("every edge is reached by the braid"))
        .collect())
}
