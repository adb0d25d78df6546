//! Parser for generator words such as `T2 T1` or `T2^1 T1^2`.

use qsym_core::{AlgebraError, GradedAlgebra};

use crate::CliError;

/// One parsed token: flux index, particle index (1 when omitted) and the
/// 1-based column where the token starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub flux: usize,
    pub particle: usize,
    pub column: usize,
}

fn parse_error(column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        column,
        message: message.into(),
    }
}

/// Reads a run of decimal digits starting at `pos`.
fn digits(chars: &[(usize, char)], pos: &mut usize, what: &str) -> Result<usize, CliError> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].1.is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        let (column, found) = match chars.get(start) {
            Some(&(c, ch)) => (c, format!("'{ch}'")),
            None => (
                chars.last().map_or(1, |&(c, _)| c + 1),
                "end of input".into(),
            ),
        };
        return Err(parse_error(
            column,
            format!("expected {what}, found {found}"),
        ));
    }
    let text: String = chars[start..*pos].iter().map(|&(_, ch)| ch).collect();
    text.parse()
        .map_err(|_| parse_error(chars[start].0, format!("{what} {text} is too large")))
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<(usize, char)> = input.chars().enumerate().map(|(i, c)| (i + 1, c)).collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let (column, ch) = chars[pos];
        if ch.is_whitespace() {
            pos += 1;
            continue;
        }
        if ch != 'T' {
            return Err(parse_error(
                column,
                format!("expected generator 'T<i>', found '{ch}'"),
            ));
        }
        pos += 1;
        let flux = digits(&chars, &mut pos, "flux index")?;
        let mut particle = 1;
        if pos < chars.len() && chars[pos].1 == '^' {
            pos += 1;
            particle = digits(&chars, &mut pos, "particle index")?;
        }
        if let Some(&(c, next)) = chars.get(pos) {
            if !next.is_whitespace() {
                return Err(parse_error(
                    c,
                    format!("unexpected '{next}' after generator"),
                ));
            }
        }
        tokens.push(Token {
            flux,
            particle,
            column,
        });
    }
    Ok(tokens)
}

/// Parses `input` into generator indices of `ctx`.
pub fn parse_word(ctx: &GradedAlgebra, input: &str) -> Result<Vec<usize>, CliError> {
    tokenize(input)?
        .into_iter()
        .map(|t| {
            ctx.generator_index(t.flux, t.particle)
                .map_err(|e| match e {
                    AlgebraError::UnknownGenerator { .. } => {
                        parse_error(t.column, format!("unknown generator: {e}"))
                    }
                    other => other.into(),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(input: &str) -> usize {
        match tokenize(input) {
            Err(CliError::Parse { column, .. }) => column,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn plain_and_indexed_tokens() {
        let t = tokenize("T2   T1^3").unwrap();
        assert_eq!(
            t,
            vec![
                Token {
                    flux: 2,
                    particle: 1,
                    column: 1
                },
                Token {
                    flux: 1,
                    particle: 3,
                    column: 6
                },
            ]
        );
        assert!(tokenize("   ").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(column("T1 X2"), 4);
        assert_eq!(column("T1 T"), 5);
        assert_eq!(column("T1^ T2"), 4);
        assert_eq!(column("T12a"), 4);
        assert_eq!(column("T99999999999999999999999"), 2);
    }

    #[test]
    fn unknown_generator_points_at_token() {
        let ctx = GradedAlgebra::new_flux_algebra(3, 1).unwrap();
        assert_eq!(parse_word(&ctx, "T3 T1").unwrap(), vec![2, 0]);
        match parse_word(&ctx, "T1 T4") {
            Err(CliError::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_word(&ctx, "T1^2").is_err());
    }
}
