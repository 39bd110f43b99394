use limitlab_core::realgen::BitSource;

/// Bits from the operating system's random number generator.
#[derive(Debug, Default)]
pub struct OsEntropy {
    word: u64,
    left: u32,
}

impl OsEntropy {
    pub fn new() -> Self {
        OsEntropy::default()
    }
}

impl BitSource for OsEntropy {
    /// Runs dry only if the OS source fails.
    fn next_bit(&mut self) -> Option<bool> {
        if self.left == 0 {
            let mut buf = [0u8; 8];
            getrandom::getrandom(&mut buf).ok()?;
            self.word = u64::from_le_bytes(buf);
            self.left = 64;
        }
        self.left -= 1;
        Some((self.word >> self.left) & 1 == 1)
    }
}
