//! Combinatorial virtual link diagrams.
//!
//! Only classical crossings are recorded; virtual crossings leave no trace.
//!
//! Chirality: rotate a crossing so both strands point downward. At a positive
//! crossing the under strand runs top-left to bottom-right and the over strand
//! top-right to bottom-left; at a negative crossing the over strand runs
//! top-left to bottom-right. With that picture fixed, every crossing has a
//! positional input pair and output pair with `R(inputs) = outputs`:
//!
//! | sign | inputs (A1, A2)          | outputs (A3, A4)          |
//! |------|--------------------------|---------------------------|
//! | +    | (under_in, over_in) top  | (over_out, under_out) bottom |
//! | −    | (under_out, over_out) bottom | (over_in, under_in) top |
//!
//! In both cases `A1, A3` are the left edges and `A2, A4` the right edges.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Over,
    Under,
}

/// One strand's traversal of a classical crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: u32,
    pub layer: Layer,
    pub sign: Sign,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.layer {
            Layer::Over => 'O',
            Layer::Under => 'U',
        };
        let s = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{l}{}{s}", self.crossing)
    }
}

/// Signed Gauss code: one cyclic passage sequence per link component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussCode {
    components: Vec<Vec<Passage>>,
}

impl GaussCode {
    /// Validates that each crossing occurs exactly twice, once over and once
    /// under, with a consistent sign.
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidGaussCode("no components".into()));
        }
        let mut seen: BTreeMap<u32, Vec<Passage>> = BTreeMap::new();
        for p in components.iter().flatten() {
            seen.entry(p.crossing).or_default().push(*p);
        }
        for (id, ps) in &seen {
            match ps.as_slice() {
                [a, b] => {
                    if a.layer == b.layer {
                        let which = if a.layer == Layer::Over { "under" } else { "over" };
                        return Err(Error::InvalidGaussCode(format!(
                            "crossing {id} has no {which} passage"
                        )));
                    }
                    if a.sign != b.sign {
                        return Err(Error::InvalidGaussCode(format!(
                            "crossing {id} has inconsistent signs"
                        )));
                    }
                }
                [a] => {
                    let which = if a.layer == Layer::Over { "under" } else { "over" };
                    return Err(Error::InvalidGaussCode(format!(
                        "crossing {id} has no {which} passage"
                    )));
                }
                _ => {
                    return Err(Error::InvalidGaussCode(format!(
                        "crossing {id} appears {} times",
                        ps.len()
                    )))
                }
            }
        }
        Ok(GaussCode { components })
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The same code read under the mirrored chirality convention: over and
    /// under are exchanged at every crossing, signs kept.
    pub fn mirrored(&self) -> GaussCode {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| Passage {
                        layer: match p.layer {
                            Layer::Over => Layer::Under,
                            Layer::Under => Layer::Over,
                        },
                        ..*p
                    })
                    .collect()
            })
            .collect();
        GaussCode { components }
    }
}

/// Parses `O<k><s>` / `U<k><s>` tokens (`s` is `+` or `-`), components
/// separated by `/`. The empty string is the crossing-free unknot.
pub fn parse_gauss(text: &str) -> Result<GaussCode> {
    let mut components = Vec::new();
    let mut index = 0;
    for piece in text.split('/') {
        let mut comp = Vec::new();
        for token in piece.split_whitespace() {
            comp.push(parse_passage(index, token)?);
            index += 1;
        }
        components.push(comp);
    }
    GaussCode::new(components)
}

fn parse_passage(index: usize, token: &str) -> Result<Passage> {
    let mut chars = token.chars();
    let layer = match chars.next() {
        Some('O') => Layer::Over,
        Some('U') => Layer::Under,
        _ => return Err(Error::parse(index, token, "expected O or U")),
    };
    let rest = chars.as_str();
    let (digits, sign) = if let Some(d) = rest.strip_suffix('+') {
        (d, Sign::Positive)
    } else if let Some(d) = rest.strip_suffix('-').or_else(|| rest.strip_suffix('−')) {
        (d, Sign::Negative)
    } else {
        return Err(Error::parse(index, token, "missing sign"));
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(index, token, "expected crossing number"));
    }
    let crossing = digits
        .parse::<u32>()
        .map_err(|_| Error::parse(index, token, "crossing number out of range"))?;
    Ok(Passage {
        crossing,
        layer,
        sign,
    })
}

impl FromStr for GaussCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_gauss(s)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(if comp.is_empty() { " /" } else { " / " })?;
            }
            for (j, p) in comp.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// Letters of a virtual braid word; indices are 1-based strand positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidLetter {
    Sigma(usize),
    SigmaInv(usize),
    Virtual(usize),
}

impl BraidLetter {
    pub fn index(self) -> usize {
        match self {
            BraidLetter::Sigma(i) | BraidLetter::SigmaInv(i) | BraidLetter::Virtual(i) => i,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidLetter::Sigma(i) => write!(f, "s{i}"),
            BraidLetter::SigmaInv(i) => write!(f, "S{i}"),
            BraidLetter::Virtual(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VirtualBraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl VirtualBraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Precondition("a braid needs at least one strand".into()));
        }
        if let Some(bad) = letters.iter().find(|l| l.index() == 0 || l.index() >= strands) {
            return Err(Error::Precondition(format!(
                "letter {bad} out of range for {strands} strands"
            )));
        }
        Ok(VirtualBraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    /// Underlying strand permutation: `perm[bottom position] = top position`
    /// of the strand ending there.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.index() - 1;
            at.swap(i, i + 1);
        }
        at
    }

    /// Gauss code of the braid closure.
    pub fn close(&self) -> GaussCode {
        close_braid(self)
    }
}

/// Parses `n=<strands>` followed by `s<i>`, `S<i>` (inverse), `v<i>` tokens.
pub fn parse_braid(text: &str) -> Result<VirtualBraidWord> {
    let mut tokens = text.split_whitespace();
    let header = tokens
        .next()
        .ok_or_else(|| Error::parse(0, "", "missing n=<strands> header"))?;
    let strands = header
        .strip_prefix("n=")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::parse(0, header, "expected n=<strands> with strands >= 1"))?;
    let mut letters = Vec::new();
    for (k, token) in tokens.enumerate() {
        let index = k + 1;
        let mut chars = token.chars();
        let kind = chars.next().unwrap();
        let num = chars.as_str();
        if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(index, token, "expected generator index"));
        }
        let i: usize = num
            .parse()
            .map_err(|_| Error::parse(index, token, "index out of range"))?;
        if i == 0 || i >= strands {
            return Err(Error::parse(index, token, "index out of range"));
        }
        letters.push(match kind {
            's' => BraidLetter::Sigma(i),
            'S' => BraidLetter::SigmaInv(i),
            'v' => BraidLetter::Virtual(i),
            _ => return Err(Error::parse(index, token, "expected s, S or v")),
        });
    }
    VirtualBraidWord::new(strands, letters)
}

impl FromStr for VirtualBraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s)
    }
}

impl fmt::Display for VirtualBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Closes a virtual braid. Classical letters become crossings numbered 1, 2, …
/// in word order; `s_i` puts the strand at position `i` under (positive),
/// `S_i` puts it over (negative). Components are listed in order of their
/// smallest top position.
pub fn close_braid(w: &VirtualBraidWord) -> GaussCode {
    let n = w.strands;
    // passages[s] collects the passages of the strand starting at top position s
    let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); n];
    let mut at: Vec<usize> = (0..n).collect();
    let mut label = 0u32;
    for l in &w.letters {
        let i = l.index() - 1;
        let (left, right) = (at[i], at[i + 1]);
        match l {
            BraidLetter::Sigma(_) | BraidLetter::SigmaInv(_) => {
                label += 1;
                let sign = if matches!(l, BraidLetter::Sigma(_)) {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                let (left_layer, right_layer) = match sign {
                    Sign::Positive => (Layer::Under, Layer::Over),
                    Sign::Negative => (Layer::Over, Layer::Under),
                };
                passages[left].push(Passage {
                    crossing: label,
                    layer: left_layer,
                    sign,
                });
                passages[right].push(Passage {
                    crossing: label,
                    layer: right_layer,
                    sign,
                });
            }
            BraidLetter::Virtual(_) => {}
        }
        at.swap(i, i + 1);
    }
    // strand s ends at bottom position q (at[q] == s) and continues as strand q
    let mut next = vec![0; n];
    for (q, &s) in at.iter().enumerate() {
        next[s] = q;
    }
    let mut visited = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut s = start;
        while !visited[s] {
            visited[s] = true;
            comp.extend_from_slice(&passages[s]);
            s = next[s];
        }
        components.push(comp);
    }
    GaussCode { components }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Slot { crossing: usize, slot: Slot },
    /// Synthetic endpoint of a crossing-free component.
    Free { component: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: Endpoint,
    pub head: Endpoint,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "serialize_sign")]
    pub sign: Sign,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    /// Crossing number from the Gauss code.
    #[serde(skip)]
    pub label: u32,
}

fn serialize_sign<S: serde::Serializer>(s: &Sign, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_i64(s.value())
}

impl Crossing {
    /// Positional inputs `(A1, A2)` of the pair map at this crossing.
    pub fn inputs(&self) -> [usize; 2] {
        match self.sign {
            Sign::Positive => [self.under_in, self.over_in],
            Sign::Negative => [self.under_out, self.over_out],
        }
    }

    /// Positional outputs `(A3, A4) = R(A1, A2)`.
    pub fn outputs(&self) -> [usize; 2] {
        match self.sign {
            Sign::Positive => [self.over_out, self.under_out],
            Sign::Negative => [self.over_in, self.under_in],
        }
    }

    pub fn slot(&self, slot: Slot) -> usize {
        match slot {
            Slot::OverIn => self.over_in,
            Slot::OverOut => self.over_out,
            Slot::UnderIn => self.under_in,
            Slot::UnderOut => self.under_out,
        }
    }

    fn slot_mut(&mut self, slot: Slot) -> &mut usize {
        match slot {
            Slot::OverIn => &mut self.over_in,
            Slot::OverOut => &mut self.over_out,
            Slot::UnderIn => &mut self.under_in,
            Slot::UnderOut => &mut self.under_out,
        }
    }
}

/// Edge/crossing incidence structure of a Gauss code. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    components: usize,
    code: GaussCode,
}

#[derive(Serialize)]
struct DiagramJson<'a> {
    crossings: &'a [Crossing],
    edges: usize,
    components: usize,
}

impl Diagram {
    /// Edges are the arcs between consecutive passages of each component;
    /// crossings are indexed by increasing Gauss-code label.
    pub fn from_gauss(code: &GaussCode) -> Diagram {
        let mut labels: Vec<u32> = code.components.iter().flatten().map(|p| p.crossing).collect();
        labels.sort_unstable();
        labels.dedup();
        let index_of: BTreeMap<u32, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut crossings: Vec<Crossing> = labels
            .iter()
            .map(|&label| Crossing {
                sign: Sign::Positive,
                over_in: usize::MAX,
                over_out: usize::MAX,
                under_in: usize::MAX,
                under_out: usize::MAX,
                label,
            })
            .collect();
        let mut edges = Vec::new();
        for (ci, comp) in code.components.iter().enumerate() {
            if comp.is_empty() {
                edges.push(Edge {
                    tail: Endpoint::Free { component: ci },
                    head: Endpoint::Free { component: ci },
                    component: ci,
                });
                continue;
            }
            for (k, p) in comp.iter().enumerate() {
                let q = &comp[(k + 1) % comp.len()];
                let (tail_c, head_c) = (index_of[&p.crossing], index_of[&q.crossing]);
                let out_slot = match p.layer {
                    Layer::Over => Slot::OverOut,
                    Layer::Under => Slot::UnderOut,
                };
                let in_slot = match q.layer {
                    Layer::Over => Slot::OverIn,
                    Layer::Under => Slot::UnderIn,
                };
                let e = edges.len();
                edges.push(Edge {
                    tail: Endpoint::Slot {
                        crossing: tail_c,
                        slot: out_slot,
                    },
                    head: Endpoint::Slot {
                        crossing: head_c,
                        slot: in_slot,
                    },
                    component: ci,
                });
                crossings[tail_c].sign = p.sign;
                *crossings[tail_c].slot_mut(out_slot) = e;
                *crossings[head_c].slot_mut(in_slot) = e;
            }
        }
        Diagram {
            crossings,
            edges,
            components: code.components.len(),
            code: code.clone(),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn gauss_code(&self) -> &GaussCode {
        &self.code
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson {
            crossings: &self.crossings,
            edges: self.edges.len(),
            components: self.components,
        })
        .expect("diagram serializes")
    }
}

/// Free function form of [`Diagram::from_gauss`].
pub fn build_diagram(code: &GaussCode) -> Diagram {
    Diagram::from_gauss(code)
}
