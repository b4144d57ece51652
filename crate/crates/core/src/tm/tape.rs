use std::collections::BTreeMap;

/// Bi-infinite tape backed by a growable two-sided buffer.
///
/// Cells outside the buffer read as `blank`. `origin` is the position of
/// `cells[0]`.
#[derive(Debug, Clone)]
pub struct Tape {
    pub(crate) cells: Vec<u16>,
    pub(crate) origin: i64,
    blank: u16,
}

impl Tape {
    pub fn new(blank: usize) -> Self {
        Tape {
            cells: Vec::new(),
            origin: 0,
            blank: blank as u16,
        }
    }

    pub fn from_cells(blank: usize, cells: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut t = Tape::new(blank);
        for (p, e) in cells {
            t.set(p, e);
        }
        t
    }

    pub fn blank(&self) -> usize {
        self.blank as usize
    }

    #[inline]
    pub fn get(&self, pos: i64) -> usize {
        let i = pos - self.origin;
        if i < 0 || i >= self.cells.len() as i64 {
            self.blank as usize
        } else {
            self.cells[i as usize] as usize
        }
    }

    #[inline]
    pub fn set(&mut self, pos: i64, sym: usize) {
        let i = self.ensure(pos);
        self.cells[i] = sym as u16;
    }

    /// Grows the buffer so `pos` is addressable; returns its index.
    #[inline]
    pub(crate) fn ensure(&mut self, pos: i64) -> usize {
        let i = pos - self.origin;
        if i >= 0 && (i as usize) < self.cells.len() {
            return i as usize;
        }
        self.grow(pos);
        (pos - self.origin) as usize
    }

    #[cold]
    fn grow(&mut self, pos: i64) {
        if self.cells.is_empty() {
            self.cells = vec![self.blank; 64];
            self.origin = pos - 32;
            return;
        }
        let len = self.cells.len() as i64;
        if pos < self.origin {
            let extra = (self.origin - pos).max(len) as usize;
            let mut v = vec![self.blank; extra];
            v.extend_from_slice(&self.cells);
            self.cells = v;
            self.origin -= extra as i64;
        } else {
            let need = (pos - self.origin + 1 - len).max(len) as usize;
            self.cells.resize(self.cells.len() + need, self.blank);
        }
    }

    /// Smallest and largest non-blank positions, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.cells.iter().position(|&c| c != self.blank)?;
        let hi = self.cells.iter().rposition(|&c| c != self.blank)?;
        Some((self.origin + lo as i64, self.origin + hi as i64))
    }

    /// Non-blank cells in position order.
    pub fn non_blank(&self) -> BTreeMap<i64, usize> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != self.blank)
            .map(|(i, &c)| (self.origin + i as i64, c as usize))
            .collect()
    }

    /// Symbols in `[lo, hi]`, blanks included.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|p| self.get(p)).collect()
    }
}

impl PartialEq for Tape {
    fn eq(&self, other: &Self) -> bool {
        self.blank == other.blank && self.non_blank() == other.non_blank()
    }
}

impl Eq for Tape {}

/// Machine state between steps. `steps` counts executed transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub tape: Tape,
    pub head: i64,
    pub state: usize,
    pub steps: u128,
}

impl Configuration {
    pub fn initial(blank: usize, start: usize) -> Self {
        Configuration {
            tape: Tape::new(blank),
            head: 0,
            state: start,
            steps: 0,
        }
    }
}
