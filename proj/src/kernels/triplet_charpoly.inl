// Shared body of the triplet characteristic-polynomial kernel. Included by the
// scalar and AVX2 translation units, each of which supplies a complex lane
// type `Cx` (aggregate {re, im}) with add/sub/mul/conj overloads and a real
// lane type `Re` with neg().

template <typename Cx, typename Re>
inline void triplet_charpoly_lane(const std::array<Cx, 9> &q, Re ax, Re ay, Re az, Re mx, Re my, Re mz, Re zero,
                                  Re &c2, Re &c1, Re &c0) {
  const std::array<Cx, 9> t = {Cx{ax, zero}, Cx{mz, zero}, Cx{zero, neg(my)}, //
                               Cx{mz, zero}, Cx{ay, zero}, Cx{mx, zero},      //
                               Cx{zero, my}, Cx{mx, zero}, Cx{az, zero}};
  // p = Q conj(T)
  std::array<Cx, 9> p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      p[3 * i + j] = add(add(mul(q[3 * i + 0], conj(t[0 + j])), mul(q[3 * i + 1], conj(t[3 + j]))),
                         mul(q[3 * i + 2], conj(t[6 + j])));
  // u = p Q^dagger
  std::array<Cx, 9> u;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      u[3 * i + j] = add(add(mul(p[3 * i + 0], conj(q[3 * j + 0])), mul(p[3 * i + 1], conj(q[3 * j + 1]))),
                         mul(p[3 * i + 2], conj(q[3 * j + 2])));
  // m = T u
  std::array<Cx, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[3 * i + j] = add(add(mul(t[3 * i + 0], u[0 + j]), mul(t[3 * i + 1], u[3 + j])), mul(t[3 * i + 2], u[6 + j]));

  const Cx tr = add(add(m[0], m[4]), m[8]);
  const Cx minors = add(add(sub(mul(m[0], m[4]), mul(m[1], m[3])), sub(mul(m[0], m[8]), mul(m[2], m[6]))),
                        sub(mul(m[4], m[8]), mul(m[5], m[7])));
  // det(m) = |det t|^2 |det q|^2. The product form keeps c0 accurate where
  // det t is tiny; expanding det(m) directly leaves O(eps) residue there.
  auto det3 = [](const std::array<Cx, 9> &a) {
    return add(sub(mul(a[0], sub(mul(a[4], a[8]), mul(a[5], a[7]))), mul(a[1], sub(mul(a[3], a[8]), mul(a[5], a[6])))),
               mul(a[2], sub(mul(a[3], a[7]), mul(a[4], a[6]))));
  };
  const Cx dt = det3(t);
  const Cx dq = det3(q);
  const Cx det = mul(mul(dt, conj(dt)), mul(dq, conj(dq)));
  c2 = neg(tr.re);
  c1 = minors.re;
  c0 = neg(det.re);
}
