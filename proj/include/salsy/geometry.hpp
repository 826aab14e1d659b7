#pragma once

// Integer geometry kernels shared by every analysis and transform.
// All coordinates are database units (DBU, 1 DBU = 1 nm); no floating
// point is used for area or overlap predicates.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace salsy {

using Dbu = long long;
using Area = long long;  // DBU^2

constexpr double kDbuPerMicron = 1000.0;

inline double dbu_to_um(Dbu v) { return static_cast<double>(v) / kDbuPerMicron; }
inline double dbu2_to_um2(Area a) {
  return static_cast<double>(a) / (kDbuPerMicron * kDbuPerMicron);
}

struct Point {
  Dbu x = 0;
  Dbu y = 0;
  bool operator==(const Point&) const = default;
};

inline Dbu manhattan(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Closed-open box [lx,hx) x [ly,hy). Zero-area boxes are legal and
// contribute nothing to unions.
struct Rect {
  Dbu lx = 0, ly = 0, hx = 0, hy = 0;

  Rect() = default;
  Rect(Dbu lx_, Dbu ly_, Dbu hx_, Dbu hy_) : lx(lx_), ly(ly_), hx(hx_), hy(hy_) {}

  bool operator==(const Rect&) const = default;

  Dbu width() const { return hx - lx; }
  Dbu height() const { return hy - ly; }
  Area area() const { return width() * height(); }
  bool degenerate() const { return hx <= lx || hy <= ly; }

  Point center() const { return {(lx + hx) / 2, (ly + hy) / 2}; }

  bool contains(const Point& p) const {
    return p.x >= lx && p.x < hx && p.y >= ly && p.y < hy;
  }
  bool contains_closed(const Point& p) const {
    return p.x >= lx && p.x <= hx && p.y >= ly && p.y <= hy;
  }
  bool contains(const Rect& r) const {
    return r.lx >= lx && r.hx <= hx && r.ly >= ly && r.hy <= hy;
  }
  // Open-interval overlap: touching edges do not count.
  bool overlaps(const Rect& r) const {
    return lx < r.hx && hx > r.lx && ly < r.hy && hy > r.ly;
  }
  // Closed overlap: shared edges/corners count as touching.
  bool touches(const Rect& r) const {
    return lx <= r.hx && hx >= r.lx && ly <= r.hy && hy >= r.ly;
  }

  Rect expanded(Dbu d) const { return {lx - d, ly - d, hx + d, hy + d}; }

  Rect intersection(const Rect& r) const {
    Rect out{std::max(lx, r.lx), std::max(ly, r.ly), std::min(hx, r.hx),
             std::min(hy, r.hy)};
    if (out.degenerate()) return Rect{};
    return out;
  }

  Rect bbox_with(const Rect& r) const {
    if (degenerate()) return r;
    if (r.degenerate()) return *this;
    return {std::min(lx, r.lx), std::min(ly, r.ly), std::max(hx, r.hx),
            std::max(hy, r.hy)};
  }
};

// Spacing predicate used by both the DRC checker and the routing grid:
// two boxes violate spacing s iff bloating one by s overlaps the other's
// interior. A gap of exactly s is legal.
inline bool within_spacing(const Rect& a, const Rect& b, Dbu s) {
  return a.lx - s < b.hx && a.hx + s > b.lx && a.ly - s < b.hy && a.hy + s > b.ly;
}

namespace detail {

// Merge a batch of [lo,hi) intervals in place; returns total covered length.
inline Dbu merge_intervals(std::vector<std::pair<Dbu, Dbu>>& iv) {
  if (iv.empty()) return 0;
  std::sort(iv.begin(), iv.end());
  Dbu total = 0;
  size_t w = 0;
  for (size_t i = 0; i < iv.size(); ++i) {
    if (w > 0 && iv[i].first <= iv[w - 1].second) {
      iv[w - 1].second = std::max(iv[w - 1].second, iv[i].second);
    } else {
      iv[w++] = iv[i];
    }
  }
  iv.resize(w);
  for (auto& [a, b] : iv) total += b - a;
  return total;
}

// Subtract merged interval set b from merged interval set a.
inline std::vector<std::pair<Dbu, Dbu>> subtract_intervals(
    const std::vector<std::pair<Dbu, Dbu>>& a,
    const std::vector<std::pair<Dbu, Dbu>>& b) {
  std::vector<std::pair<Dbu, Dbu>> out;
  for (auto [lo, hi] : a) {
    Dbu cur = lo;
    for (const auto& [blo, bhi] : b) {
      if (bhi <= cur) continue;
      if (blo >= hi) break;
      if (blo > cur) out.emplace_back(cur, blo);
      cur = std::max(cur, bhi);
      if (cur >= hi) break;
    }
    if (cur < hi) out.emplace_back(cur, hi);
  }
  return out;
}

}  // namespace detail

// Exact area of the union of an arbitrary rect set. Order-independent,
// overlap-tolerant, empty input yields 0.
inline Area union_area(std::span<const Rect> rects) {
  std::vector<Dbu> xs;
  xs.reserve(rects.size() * 2);
  for (const auto& r : rects) {
    if (r.degenerate()) continue;
    xs.push_back(r.lx);
    xs.push_back(r.hx);
  }
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  Area total = 0;
  std::vector<std::pair<Dbu, Dbu>> iv;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Dbu x0 = xs[i], x1 = xs[i + 1];
    iv.clear();
    for (const auto& r : rects) {
      if (r.degenerate()) continue;
      if (r.lx <= x0 && r.hx >= x1) iv.emplace_back(r.ly, r.hy);
    }
    total += detail::merge_intervals(iv) * (x1 - x0);
  }
  return total;
}

inline Area union_area(const std::vector<Rect>& rects) {
  return union_area(std::span<const Rect>(rects));
}

// Region covered by a but not by b, as disjoint x-strip rects. The strips
// are canonical (sorted by lx, then ly), so identical regions produce
// identical output regardless of input order.
inline std::vector<Rect> region_difference(std::span<const Rect> a,
                                           std::span<const Rect> b) {
  std::vector<Dbu> xs;
  for (const auto& r : a) {
    if (r.degenerate()) continue;
    xs.push_back(r.lx);
    xs.push_back(r.hx);
  }
  for (const auto& r : b) {
    if (r.degenerate()) continue;
    xs.push_back(r.lx);
    xs.push_back(r.hx);
  }
  if (xs.empty()) return {};
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Rect> out;
  std::vector<std::pair<Dbu, Dbu>> cov, cut;
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Dbu x0 = xs[i], x1 = xs[i + 1];
    cov.clear();
    cut.clear();
    for (const auto& r : a)
      if (!r.degenerate() && r.lx <= x0 && r.hx >= x1) cov.emplace_back(r.ly, r.hy);
    if (cov.empty()) continue;
    for (const auto& r : b)
      if (!r.degenerate() && r.lx <= x0 && r.hx >= x1) cut.emplace_back(r.ly, r.hy);
    detail::merge_intervals(cov);
    detail::merge_intervals(cut);
    for (auto [lo, hi] : detail::subtract_intervals(cov, cut))
      out.push_back({x0, lo, x1, hi});
  }
  return out;
}

inline Area area_of(std::span<const Rect> disjoint) {
  Area t = 0;
  for (const auto& r : disjoint) t += r.area();
  return t;
}

}  // namespace salsy
