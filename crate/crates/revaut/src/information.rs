//! Entropy accounting over micro/macro distributions and the information
//! flux calculus.
//!
//! Two rules do all the work here. One-to-one evolution rearranges a
//! probability vector without mixing it, so Shannon entropy is conserved
//! exactly; a many-to-one readout adds probabilities together, so macro
//! entropy can only fall. On the transport side, information crossing a
//! surface is `sum (j . n) dA` over patches, and the discrete continuity
//! equation is enforced in exact integer arithmetic on a lattice: bits that
//! leave a cell must arrive somewhere else, tick for tick.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::interface::InterfaceMap;
use crate::permutation::Permutation;

/// Tolerance for a probability vector summing to one.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Vacuum light speed in m/s, the default carrier velocity for flux
/// figures. Any other speed can be passed instead; diffusing carriers are
/// usually far slower.
pub const LIGHT_SPEED: f64 = 2.998e8;

/// A probability vector over micro configuration indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no entries".into()));
        }
        for (i, &p) in probs.iter().enumerate() {
            if p.is_nan() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is {p}, must be >= 0"
                )));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return Err(Error::IndexOutOfRange { index: at, size: n });
        }
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Shannon entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        -self
            .probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>()
    }

    /// Rearranges the vector along a permutation: mass at `k` moves to
    /// `image[k]`. Entropy is preserved (same multiset of entries).
    pub fn push_forward(&self, p: &Permutation) -> Result<Self> {
        if p.size() != self.probs.len() {
            return Err(Error::SizeMismatch {
                expected: self.probs.len(),
                got: p.size(),
            });
        }
        let mut out = vec![0.0; self.probs.len()];
        for (k, &prob) in self.probs.iter().enumerate() {
            out[p.image()[k]] = prob;
        }
        Ok(Self { probs: out })
    }

    /// Sums micro probabilities over readout preimages, yielding the macro
    /// distribution over `m.answers()` in declared order.
    pub fn project(&self, m: &InterfaceMap, question: &str) -> Result<Self> {
        if m.micro_count() != self.probs.len() {
            return Err(Error::SizeMismatch {
                expected: self.probs.len(),
                got: m.micro_count(),
            });
        }
        let mut out = vec![0.0; m.answers().len()];
        for (idx, &prob) in self.probs.iter().enumerate() {
            let ans = m.answer(question, idx)?;
            let a = m.answers().iter().position(|t| t == ans).expect("declared");
            out[a] += prob;
        }
        Ok(Self { probs: out })
    }
}

/// Information flow density magnitude for `carriers` objects per cubic
/// metre, each holding `bits_each` bits, drifting at `velocity` m/s:
/// `j = N v i` in bits per square metre per second.
pub fn flux_density(carriers: f64, velocity: f64, bits_each: f64) -> Result<f64> {
    if carriers < 0.0 || carriers.is_nan() {
        return Err(Error::NegativeQuantity {
            name: "carrier density",
            value: carriers,
        });
    }
    if bits_each < 0.0 || bits_each.is_nan() {
        return Err(Error::NegativeQuantity {
            name: "bits per carrier",
            value: bits_each,
        });
    }
    Ok(carriers * velocity * bits_each)
}

/// A flat surface element: flow density vector `j` (bits / m^2 s), unit
/// normal `n`, and area (m^2).
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePatch {
    pub flow: [f64; 3],
    pub normal: [f64; 3],
    pub area: f64,
}

impl SurfacePatch {
    pub fn new(flow: [f64; 3], normal: [f64; 3], area: f64) -> Result<Self> {
        let norm = dot(normal, normal).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidPatch(format!(
                "normal has length {norm}, must be 1"
            )));
        }
        if !area.is_finite() || area <= 0.0 {
            return Err(Error::InvalidPatch(format!(
                "area is {area}, must be positive"
            )));
        }
        if flow.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPatch("flow vector is not finite".into()));
        }
        Ok(Self { flow, normal, area })
    }

    /// Bits per second through this patch: `(j . n) * area`.
    pub fn flow_through(&self) -> f64 {
        dot(self.flow, self.normal) * self.area
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn normalize(a: [f64; 3]) -> [f64; 3] {
    scale(a, 1.0 / dot(a, a).sqrt())
}

/// Total flow through a tessellated surface: `sum (j . n) * area`.
pub fn surface_flow(patches: &[SurfacePatch]) -> f64 {
    patches.iter().map(SurfacePatch::flow_through).sum()
}

/// Flow through a sphere of radius `radius` with uniform radial density
/// `speed * bits_each`: `4 pi r^2 c i` bits per second.
pub fn sphere_flow(radius: f64, speed: f64, bits_each: f64) -> Result<f64> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::NonPositiveRadius(radius));
    }
    Ok(4.0 * std::f64::consts::PI * radius * radius * speed * bits_each)
}

/// Triangulates a sphere by subdividing an icosahedron `subdivisions` times
/// (yielding `20 * 4^subdivisions` flat facets) and equips each facet with a
/// radial flow of magnitude `flow_magnitude` evaluated at its centroid.
///
/// As the tessellation refines, `surface_flow` of the result converges to
/// `sphere_flow` quadratically.
pub fn icosphere_patches(
    radius: f64,
    subdivisions: u32,
    flow_magnitude: f64,
) -> Result<Vec<SurfacePatch>> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::NonPositiveRadius(radius));
    }
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let verts: Vec<[f64; 3]> = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .iter()
    .map(|&v| scale(normalize(v), radius))
    .collect();
    let mut faces: Vec<[[f64; 3]; 3]> = [
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ]
    .iter()
    .map(|&[a, b, c]| [verts[a], verts[b], verts[c]])
    .collect();

    for _ in 0..subdivisions {
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let midpoint = |p: [f64; 3], q: [f64; 3]| scale(normalize(scale(add(p, q), 0.5)), radius);
            let ab = midpoint(a, b);
            let bc = midpoint(b, c);
            let ca = midpoint(c, a);
            next.push([a, ab, ca]);
            next.push([ab, b, bc]);
            next.push([ca, bc, c]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }

    faces
        .into_iter()
        .map(|[a, b, c]| {
            let vec_area = scale(cross(sub(b, a), sub(c, a)), 0.5);
            let area = dot(vec_area, vec_area).sqrt();
            let mut normal = scale(vec_area, 1.0 / area);
            let centroid = scale(add(add(a, b), c), 1.0 / 3.0);
            if dot(normal, centroid) < 0.0 {
                normal = scale(normal, -1.0);
            }
            let flow = scale(normalize(centroid), flow_magnitude);
            SurfacePatch::new(flow, normal, area)
        })
        .collect()
}

/// Parses a patch list document: one patch per line,
/// `jx jy jz nx ny nz area`, `#` comments allowed.
pub fn parse_patches(text: &str) -> Result<Vec<SurfacePatch>> {
    let mut patches = Vec::new();
    for (lineno0, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno0 + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>().map_err(|_| Error::Malformed {
                    line: lineno,
                    reason: format!("not a number: \"{t}\""),
                })
            })
            .collect::<Result<_>>()?;
        if nums.len() != 7 {
            return Err(Error::Malformed {
                line: lineno,
                reason: "expected 7 numbers: jx jy jz nx ny nz area".into(),
            });
        }
        patches.push(
            SurfacePatch::new(
                [nums[0], nums[1], nums[2]],
                [nums[3], nums[4], nums[5]],
                nums[6],
            )
            .map_err(|e| Error::Malformed {
                line: lineno,
                reason: e.to_string(),
            })?,
        );
    }
    Ok(patches)
}

/// A directed bit transfer applied once per tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: u64,
}

/// Integer bit contents per cell plus the per-tick transfer set. The
/// conserved quantity is counted, never approximated, so conservation
/// failures are hard errors rather than drift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFlow {
    cells: Vec<u64>,
    transfers: Vec<Transfer>,
    regions: Vec<(String, BTreeSet<usize>)>,
}

/// Per-cell balance over one tick. `residual` is re-derived from the
/// transfer list independently of the applied contents and must be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellBalance {
    pub before: u64,
    pub after: u64,
    pub inflow: u64,
    pub outflow: u64,
    pub residual: i128,
}

/// Balance of a named closed region: the discrete surface law. Net outward
/// transfer must equal the drop in bits stored inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionBalance {
    pub name: String,
    pub outward: u64,
    pub inward: u64,
    pub delta_inside: i128,
    pub holds: bool,
}

/// One tick's bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    pub total_before: u64,
    pub total_after: u64,
    pub cells: Vec<CellBalance>,
    pub regions: Vec<RegionBalance>,
}

impl ContinuityReport {
    pub fn max_residual(&self) -> i128 {
        self.cells.iter().map(|c| c.residual.abs()).max().unwrap_or(0)
    }

    pub fn conserved(&self) -> bool {
        self.total_before == self.total_after
            && self.max_residual() == 0
            && self.regions.iter().all(|r| r.holds)
    }
}

impl fmt::Display for ContinuityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cell  before  in  out  after  residual")?;
        for (i, c) in self.cells.iter().enumerate() {
            writeln!(
                f,
                "{:<4}  {:<6}  {:<2}  {:<3}  {:<5}  {}",
                i, c.before, c.inflow, c.outflow, c.after, c.residual
            )?;
        }
        for r in &self.regions {
            writeln!(
                f,
                "region {}: outward={} inward={} delta_inside={} ok={}",
                r.name, r.outward, r.inward, r.delta_inside, r.holds
            )?;
        }
        write!(
            f,
            "total_bits={} residual_max={}",
            self.total_after,
            self.max_residual()
        )
    }
}

impl LatticeFlow {
    pub fn new(cells: Vec<u64>, transfers: Vec<Transfer>) -> Result<Self> {
        let n = cells.len();
        for t in &transfers {
            for idx in [t.from, t.to] {
                if idx >= n {
                    return Err(Error::CellOutOfRange { index: idx, size: n });
                }
            }
        }
        Ok(Self {
            cells,
            transfers,
            regions: Vec::new(),
        })
    }

    /// Adds a named closed cell region whose boundary balance is checked at
    /// every tick.
    pub fn with_region(
        mut self,
        name: impl Into<String>,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        let n = self.cells.len();
        if let Some(&bad) = members.iter().find(|&&m| m >= n) {
            return Err(Error::CellOutOfRange { index: bad, size: n });
        }
        self.regions.push((name.into(), members));
        Ok(self)
    }

    /// Parses the line-oriented lattice document.
    ///
    /// ```text
    /// cells: 5 0
    /// transfers:
    /// 0 1 3
    /// region: left 0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut cells: Option<Vec<u64>> = None;
        let mut in_transfers = false;
        let mut transfers = Vec::new();
        let mut regions: Vec<(String, BTreeSet<usize>)> = Vec::new();

        for (lineno0, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno0 + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if cells.is_none() {
                let rest = line.strip_prefix("cells:").ok_or_else(|| Error::Malformed {
                    line: lineno,
                    reason: "expected \"cells:\" line".into(),
                })?;
                let parsed: Vec<u64> = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u64>().map_err(|_| Error::Malformed {
                            line: lineno,
                            reason: format!("not a bit count: \"{t}\""),
                        })
                    })
                    .collect::<Result<_>>()?;
                if parsed.is_empty() {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: "\"cells:\" declares no cells".into(),
                    });
                }
                cells = Some(parsed);
            } else if line == "transfers:" {
                in_transfers = true;
            } else if let Some(rest) = line.strip_prefix("region:") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: "expected \"region: <name> <cell> ...\"".into(),
                    });
                }
                if regions.iter().any(|(n, _)| n == toks[0]) {
                    return Err(Error::DuplicateSymbol {
                        line: lineno,
                        token: toks[0].to_string(),
                    });
                }
                let members: BTreeSet<usize> = toks[1..]
                    .iter()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| Error::Malformed {
                            line: lineno,
                            reason: format!("not a cell index: \"{t}\""),
                        })
                    })
                    .collect::<Result<_>>()?;
                regions.push((toks[0].to_string(), members));
            } else if in_transfers {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: "expected \"<from> <to> <amount>\"".into(),
                    });
                }
                let parse_idx = |t: &str| {
                    t.parse::<usize>().map_err(|_| Error::Malformed {
                        line: lineno,
                        reason: format!("not a cell index: \"{t}\""),
                    })
                };
                let amount = toks[2].parse::<u64>().map_err(|_| Error::Malformed {
                    line: lineno,
                    reason: format!("not a bit count: \"{}\"", toks[2]),
                })?;
                transfers.push(Transfer {
                    from: parse_idx(toks[0])?,
                    to: parse_idx(toks[1])?,
                    amount,
                });
            } else {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: "expected \"transfers:\"".into(),
                });
            }
        }

        let cells = cells.ok_or(Error::MissingSection { section: "cells:" })?;
        let mut lattice = Self::new(cells, transfers)?;
        for (name, members) in regions {
            lattice = lattice.with_region(name, members)?;
        }
        Ok(lattice)
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.transfers
    }

    pub fn total_bits(&self) -> u64 {
        self.cells.iter().sum()
    }

    /// Replaces the per-tick transfer set.
    pub fn with_transfers(mut self, transfers: Vec<Transfer>) -> Result<Self> {
        let n = self.cells.len();
        for t in &transfers {
            for idx in [t.from, t.to] {
                if idx >= n {
                    return Err(Error::CellOutOfRange { index: idx, size: n });
                }
            }
        }
        self.transfers = transfers;
        Ok(self)
    }

    /// Applies all transfers simultaneously and returns the successor
    /// lattice plus the balance report. A cell may send at most what it
    /// held at the start of the tick; inflow arriving during the tick
    /// cannot fund outflow.
    pub fn tick(&self) -> Result<(Self, ContinuityReport)> {
        let n = self.cells.len();
        let mut inflow = vec![0u64; n];
        let mut outflow = vec![0u64; n];
        for t in &self.transfers {
            outflow[t.from] += t.amount;
            inflow[t.to] += t.amount;
        }
        for (cell, (&held, &sent)) in self.cells.iter().zip(&outflow).enumerate() {
            if sent > held {
                return Err(Error::TransferExceedsContent { cell, held, sent });
            }
        }
        let next_cells: Vec<u64> = (0..n)
            .map(|c| self.cells[c] - outflow[c] + inflow[c])
            .collect();

        let cells: Vec<CellBalance> = (0..n)
            .map(|c| CellBalance {
                before: self.cells[c],
                after: next_cells[c],
                inflow: inflow[c],
                outflow: outflow[c],
                residual: (next_cells[c] as i128 - self.cells[c] as i128)
                    - (inflow[c] as i128 - outflow[c] as i128),
            })
            .collect();

        let regions: Vec<RegionBalance> = self
            .regions
            .iter()
            .map(|(name, members)| {
                let mut outward = 0u64;
                let mut inward = 0u64;
                for t in &self.transfers {
                    match (members.contains(&t.from), members.contains(&t.to)) {
                        (true, false) => outward += t.amount,
                        (false, true) => inward += t.amount,
                        _ => {}
                    }
                }
                let before: u64 = members.iter().map(|&m| self.cells[m]).sum();
                let after: u64 = members.iter().map(|&m| next_cells[m]).sum();
                let delta_inside = after as i128 - before as i128;
                RegionBalance {
                    name: name.clone(),
                    outward,
                    inward,
                    delta_inside,
                    // net outward flow equals the drop in stored bits
                    holds: outward as i128 - inward as i128 == -delta_inside,
                }
            })
            .collect();

        let report = ContinuityReport {
            total_before: self.cells.iter().sum(),
            total_after: next_cells.iter().sum(),
            cells,
            regions,
        };
        let next = Self {
            cells: next_cells,
            transfers: self.transfers.clone(),
            regions: self.regions.clone(),
        };
        Ok((next, report))
    }
}
