"""The groups Z_p^m: elements, subgroups, complements and automorphisms"""
