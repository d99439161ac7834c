# %% Unifying imprecise weights into one fuzzy numeric scale
#
# Stakeholders describe causal strengths however they like: numbers in
# [-1, 1] or [-10, 10], or words from a 13- or 11-term vocabulary. All of it
# lands on the beta scale of the 13-term base set: a real number in [-6, 6].

import fcmkit as fk

print("The 13-term base vocabulary:")
for i in fk.BLTS_13.indices():
    a, b, c = fk.BLTS_13.triangle(i)
    print(f"  s_{i:+d}  {fk.BLTS_13.label(i):>5}  triangle ({a:+.3f}, {b:+.3f}, {c:+.3f})")

# %% A numeric weight becomes a beta via membership-weighted aggregation
x = 0.37
beta = fk.beta_from_numeric(x)
print(f"\nnumeric {x} -> beta {beta:.2f}")

# %% ... and every beta splits into a term plus a symbolic translation
t = fk.tuple_from_beta(-1.813)
print(f"beta -1.813 -> ({fk.BLTS_13.label(t.term_index)}, {t.alpha:+.3f})")
print(f"   and back: {fk.beta_from_tuple(t):+.3f}  (lossless)")

# %% Linguistic inputs
vh = fk.tuple_from_term(fk.BLTS_13.index_of("VH"))
print(f"\n'VH' on the 13-term set -> beta {fk.beta_from_tuple(vh):+.1f}")

m11 = fk.tuple_from_term(fk.TERMS_11.index_of("M"))
print(f"'M' on the 11-term set  -> beta {fk.normalize_to_blts(m11, fk.TERMS_11):+.2f}"
      "  (apex projected onto the base set)")

# %% Defuzzification maps a beta onto a crisp [0, 1] value
for beta in (-6.0, -1.813, 0.0, 3.69, 6.0):
    print(f"defuzzify({beta:+.3f}) = {fk.defuzzify(beta):.4f}")
