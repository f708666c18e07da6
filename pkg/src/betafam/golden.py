"""Expansions of f_{i/j,k} at p = 5, ell = 2, as printed in the original table.

Line breaks are kept; comparisons normalize whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GoldenEntry:
    i: int
    j: int
    k: int
    expression: str
    text: str

    @property
    def label(self) -> str:
        return f"f_{{{self.i}/{self.j},{self.k}}}"


P = 5
ELL = 2

TABLE = [
    GoldenEntry(
        1, 1, 1, "Delta^2",
        """q^2 + 2*q^3 + q^7 + q^12 + 2*q^13 + q^17 + 2*q^18 + 
2*q^22 + 2*q^23 + 3*q^28 + q^32 + 4*q^33 + q^37 + 
2*q^42 + 2*q^43 + q^47 + 2*q^48 + q^52 + 2*q^53 + 
2*q^62 + 2*q^63 + q^67 + 3*q^68 + 2*q^73 + 2*q^77 + 
4*q^78 + 2*q^82 + 2*q^83 + q^92 + 4*q^93 + q^97 + 
3*q^98 + O(q^100) mod 5""",
    ),
    GoldenEntry(
        2, 1, 1, "Delta^4",
        """q^4 + 4*q^5 + 4*q^6 + 2*q^9 + 4*q^10 + 3*q^14 + 
3*q^15 + 3*q^16 + 4*q^19 + 2*q^20 + 3*q^21 + 2*q^24 
+ 2*q^26 + q^29 + 3*q^30 + 2*q^34 + 4*q^35 + 3*q^36
+ 3*q^39 + 2*q^44 + 3*q^45 + q^51 + 4*q^54 + 3*q^55 
+ q^56 + 2*q^59 + 4*q^60 + 2*q^64 + 3*q^65 + 3*q^66 
+ 4*q^69 + 4*q^70 + 2*q^76 + q^79 + 4*q^80 + 4*q^81 
+ q^84 + 4*q^85 + q^86 + 3*q^89 + 3*q^90 + q^91 + 
4*q^94 + 4*q^96 + 4*q^99 + O(q^100) mod 5""",
    ),
    GoldenEntry(
        3, 1, 1, "Delta^6",
        """q^6 + q^7 + 2*q^8 + 3*q^9 + 3*q^11 + 2*q^12 + 2*q^13 
+ q^16 + 4*q^17 + q^18 + 4*q^19 + 2*q^22 + 4*q^24 +
3*q^26 + 3*q^27 + 3*q^28 + 3*q^29 + 4*q^31 + 4*q^32 
+ 4*q^33 + 4*q^34 + q^36 + q^37 + 4*q^38 + 3*q^39 + 
4*q^41 + q^42 + 4*q^44 + 4*q^46 + 4*q^48 + 4*q^49 + 
q^51 + 2*q^53 + 4*q^54 + 3*q^56 + 4*q^58 + q^62 + 
4*q^63 + 3*q^64 + 3*q^66 + 4*q^67 + 3*q^68 + q^69 + 
2*q^72 + 4*q^73 + q^74 + q^76 + 4*q^77 + 3*q^78 + 
4*q^79 + q^82 + 3*q^84 + 2*q^86 + q^87 + 4*q^88 + 
4*q^89 + 3*q^91 + q^92 + 2*q^93 + 4*q^94 + 3*q^96 + 
3*q^97 + q^98 + 2*q^99 + O(q^100) mod 5""",
    ),
    GoldenEntry(
        4, 1, 1, "Delta^8",
        """q^8 + 3*q^9 + 4*q^10 + 2*q^11 + q^12 + 4*q^13 + 4*q^14
+ 3*q^15 + 2*q^16 + q^19 + 3*q^21 + 4*q^22 + 2*q^24 
+ 4*q^26 + 4*q^27 + 4*q^28 + 4*q^29 + 3*q^31 + 
4*q^33 + q^34 + 4*q^35 + 3*q^37 + q^38 + 2*q^39 + 
q^43 + 3*q^44 + 2*q^47 + 4*q^51 + 2*q^52 + q^53 + 
3*q^54 + q^56 + q^57 + 3*q^58 + 2*q^59 + 4*q^60 +
4*q^61 + 2*q^63 + 3*q^65 + 2*q^66 + q^67 + 4*q^68 + 
2*q^69 + 2*q^71 + q^73 + q^74 + 2*q^76 + 2*q^78 + 
3*q^79 + 2*q^81 + 3*q^82 + 4*q^85 + 4*q^86 + q^87 +
q^89 + 3*q^90 + q^91 + 3*q^92 + 3*q^93 + 3*q^94 + 
4*q^97 + 3*q^98 + 4*q^99 + O(q^100) mod 5""",
    ),
    GoldenEntry(
        5, 5, 1, "Delta^10",
        """q^10 + 2*q^15 + q^35 + q^60 + 2*q^65 + q^85 + 2*q^90 
+ O(q^100) mod 5""",
    ),
    GoldenEntry(
        25, 29, 1, "Delta^50 + 4 Delta^42 E4^24 + 3 Delta^41 E4^27",
        """3*q^41 + 2*q^42 + 4*q^43 + 4*q^44 + 3*q^47 + 2*q^48 + 
3*q^49 + q^50 + q^51 + q^52 + 2*q^54 + q^56 + 4*q^58
+ q^59 + 4*q^61 + 4*q^62 + q^63 + 3*q^64 + q^66 + 
4*q^67 + 3*q^68 + 3*q^69 + q^71 + q^74 + 2*q^75 + 
2*q^76 + 3*q^78 + 4*q^79 + 2*q^81 + 3*q^82 + 2*q^83 
+ 4*q^84 + 2*q^88 + 3*q^89 + 4*q^91 + q^92 + 2*q^94 
+ 2*q^96 + q^98 + q^102 + q^104 + 4*q^106 + 3*q^107 
+ 3*q^108 + 2*q^109 + 4*q^111 + 4*q^112 + 4*q^114 + 
3*q^116 + 2*q^118 + 2*q^119 + q^121 + 4*q^122 + 
3*q^123 + q^124 + q^126 + 2*q^127 + q^129 + 4*q^132 
+ q^134 + 4*q^136 + 4*q^138 + q^139 + q^141 + 
3*q^143 + q^144 + q^147 + 3*q^149 + O(q^150) mod 5""",
    ),
    GoldenEntry(
        25, 5, 2, "Delta^50",
        """q^50 + 10*q^55 + 15*q^60 + 5*q^65 + 5*q^70 + 12*q^75 + 
15*q^80 + 20*q^85 + 10*q^90 + 5*q^95 + 15*q^100 + 
10*q^105 + 20*q^110 + 5*q^115 + 20*q^125 + 20*q^135 
+ 15*q^140 + 20*q^145 + 10*q^150 + O(q^151) mod 25""",
    ),
]
