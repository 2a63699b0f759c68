"""
Produit de polynômes entiers par substitution de Kronecker
----------------------------------------------------------
Les coefficients sont empaquetés dans un grand entier (une tranche d'octets
par coefficient), le produit est fait par gmpy2, puis dépaqueté. Le résultat
est identique, bit à bit, à la convolution naïve.
"""

from typing import List, Sequence

import gmpy2


def _slot_bytes(a: Sequence[int], b: Sequence[int]) -> int:
    """Largeur d'une tranche : |c_k| ≤ min(len)·max|a|·max|b| < 2^(8·largeur - 1)."""
    max_a = max((abs(c) for c in a), default=0)
    max_b = max((abs(c) for c in b), default=0)
    bits = max_a.bit_length() + max_b.bit_length() + min(len(a), len(b)).bit_length() + 1
    return max(1, (bits + 7) // 8)


def _pack(coeffs: Sequence[int], width: int) -> "gmpy2.mpz":
    """Empaquette une suite signée : partie positive moins partie négative."""
    positive = bytearray(len(coeffs) * width)
    negative = bytearray(len(coeffs) * width)
    for i, c in enumerate(coeffs):
        if c > 0:
            positive[i * width:(i + 1) * width] = c.to_bytes(width, "little")
        elif c < 0:
            negative[i * width:(i + 1) * width] = (-c).to_bytes(width, "little")
    return gmpy2.mpz(int.from_bytes(positive, "little")) - gmpy2.mpz(int.from_bytes(negative, "little"))


def kronecker_multiply(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    """
    Premiers ``length`` coefficients du produit de deux polynômes entiers.

    Args:
        a: Coefficients du premier facteur (indice croissant)
        b: Coefficients du second facteur
        length: Nombre de coefficients voulus

    Returns:
        Liste des coefficients c(0..length-1)
    """
    if length <= 0:
        return []
    a = [int(c) for c in a[:length]]
    b = [int(c) for c in b[:length]]
    if not a or not b:
        return [0] * length

    width = _slot_bytes(a, b)
    packed_a = _pack(a, width)
    packed_b = packed_a if b == a else _pack(b, width)
    product = packed_a * packed_a if b == a else packed_a * packed_b

    # Biais de 2^(8·largeur - 1) par tranche : chaque tranche devient positive, sans retenue
    slots = len(a) + len(b) - 1
    half = 1 << (8 * width - 1)
    bias_pattern = bytes(width - 1) + b"\x80"
    bias = gmpy2.mpz(int.from_bytes(bias_pattern * slots, "little"))
    raw = int(product + bias).to_bytes(slots * width, "little")

    out = [
        int.from_bytes(raw[k * width:(k + 1) * width], "little") - half
        for k in range(min(length, slots))
    ]
    out.extend([0] * (length - len(out)))
    return out


__all__ = ["kronecker_multiply"]
