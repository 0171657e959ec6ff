use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{DyadicRational, Word};
use crate::graphs::{DualMove, PrimalMove};

/// The generator for walker `stream` of experiment `seed`: one ChaCha
/// stream per walker, so parallel walkers are independent and every
/// trajectory is reproducible from `(seed, stream)` alone.
pub fn walker_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Simple random walk on the wrapped graph, started at the root. Steps
/// choose uniformly among the incident edges (two loops and one downward
/// edge at the root; left/right/down and, from even labels, up elsewhere),
/// mutating the word in place so a step is O(1) amortised at any depth.
#[derive(Clone, Debug)]
pub struct WrappedWalker {
    word: Word,
    time: u64,
    rng: ChaCha8Rng,
}

impl WrappedWalker {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self::from_word(Word::empty(), seed, stream)
    }

    /// Starts the walk at an arbitrary vertex.
    pub fn from_word(word: Word, seed: u64, stream: u64) -> Self {
        WrappedWalker { word, time: 0, rng: walker_rng(seed, stream) }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn depth(&self) -> usize {
        self.word.depth()
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn step(&mut self) -> PrimalMove {
        self.time += 1;
        if self.word.is_empty() {
            return match self.rng.random_range(0..3u8) {
                0 => PrimalMove::Left,
                1 => PrimalMove::Right,
                _ => {
                    self.word.append_in_place(0);
                    PrimalMove::Down
                }
            };
        }
        let choices = if self.word.is_even() { 4u8 } else { 3u8 };
        match self.rng.random_range(0..choices) {
            0 => {
                self.word.offset_mod_in_place(-1).expect("nonempty");
                PrimalMove::Left
            }
            1 => {
                self.word.offset_mod_in_place(1).expect("nonempty");
                PrimalMove::Right
            }
            2 => {
                self.word.append_in_place(0);
                PrimalMove::Down
            }
            _ => {
                self.word.pop_in_place().expect("nonempty");
                PrimalMove::Up
            }
        }
    }
}

/// Simple random walk on the wrapped dual graph: five uniform moves
/// everywhere, with sideways and upward moves degenerating to loops at the
/// root.
#[derive(Clone, Debug)]
pub struct DualWalker {
    word: Word,
    time: u64,
    rng: ChaCha8Rng,
}

impl DualWalker {
    pub fn new(seed: u64, stream: u64) -> Self {
        DualWalker { word: Word::empty(), time: 0, rng: walker_rng(seed, stream) }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn depth(&self) -> usize {
        self.word.depth()
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn step(&mut self) -> DualMove {
        self.time += 1;
        let at_root = self.word.is_empty();
        match self.rng.random_range(0..5u8) {
            0 => {
                if !at_root {
                    self.word.offset_mod_in_place(-1).expect("nonempty");
                }
                DualMove::Left
            }
            1 => {
                if !at_root {
                    self.word.offset_mod_in_place(1).expect("nonempty");
                }
                DualMove::Right
            }
            2 => {
                if !at_root {
                    self.word.pop_in_place().expect("nonempty");
                }
                DualMove::Up
            }
            3 => {
                self.word.append_in_place(0);
                DualMove::DownZero
            }
            _ => {
                self.word.append_in_place(1);
                DualMove::DownOne
            }
        }
    }
}

/// Simple random walk on the half-plane lattice started at depth 0. The
/// state is `(depth, offset)` with the exact horizontal position
/// `offset / 2^depth`; the label parity needed for the upward move equals
/// the offset parity at positive depth. The offset is a big integer, so
/// positions stay exact at any depth.
#[derive(Clone, Debug)]
pub struct HalfPlaneWalker {
    depth: u64,
    offset: BigInt,
    time: u64,
    rng: ChaCha8Rng,
}

impl HalfPlaneWalker {
    pub fn new(seed: u64, stream: u64) -> Self {
        HalfPlaneWalker { depth: 0, offset: BigInt::ZERO, time: 0, rng: walker_rng(seed, stream) }
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn position(&self) -> DyadicRational {
        DyadicRational::new(self.offset.clone(), self.depth as u32)
    }

    pub fn step(&mut self) -> PrimalMove {
        self.time += 1;
        let can_go_up = self.depth >= 1 && !self.offset.bit(0);
        let choices = if can_go_up { 4u8 } else { 3u8 };
        match self.rng.random_range(0..choices) {
            0 => {
                self.offset -= 1;
                PrimalMove::Left
            }
            1 => {
                self.offset += 1;
                PrimalMove::Right
            }
            2 => {
                self.depth += 1;
                self.offset <<= 1;
                PrimalMove::Down
            }
            _ => {
                self.depth -= 1;
                self.offset >>= 1;
                PrimalMove::Up
            }
        }
    }
}

/// One row of the debugging trajectory dump.
#[derive(Clone, Debug)]
pub struct TrajectoryRow {
    pub t: u64,
    pub depth: usize,
    pub label: String,
    pub mv: String,
    pub position_num: String,
    pub position_exp: u32,
}

impl TrajectoryRow {
    /// CSV header matching [`TrajectoryRow::to_csv_row`].
    pub fn csv_header() -> &'static str {
        "t,depth,label,move,position_num,position_exp"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.t, self.depth, self.label, self.mv, self.position_num, self.position_exp
        )
    }
}

impl WrappedWalker {
    /// Runs `steps` steps recording one row per step.
    pub fn trajectory(&mut self, steps: u64) -> Vec<TrajectoryRow> {
        let mut rows = Vec::with_capacity(steps as usize);
        for _ in 0..steps {
            let mv = self.step();
            let pos = self.word.position();
            rows.push(TrajectoryRow {
                t: self.time,
                depth: self.depth(),
                label: self.word.to_string(),
                mv: format!("{mv:?}"),
                position_num: pos.numerator().to_string(),
                position_exp: pos.exponent(),
            });
        }
        rows
    }
}
