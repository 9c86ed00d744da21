// Copyright 2026 The LossProbe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstring>
#include <vector>

#include "lossprobe/common/hash.h"
#include "lossprobe/sim/app_instance.h"

namespace lossprobe::sim {
namespace {

constexpr uint8_t kHeaderGray = 48;
constexpr uint8_t kFooterGray = 72;
constexpr uint8_t kBackgroundGray = 236;

uint64_t Mix(uint64_t x) {
  x ^= x >> 31;
  x *= 0x7fb5d329728ea185ULL;
  x ^= x >> 27;
  x *= 0x81dadef4bc2dd44dULL;
  x ^= x >> 33;
  return x;
}

// Draws into rows [clip_top, clip_bottom) only.
class Canvas {
 public:
  Canvas(GrayImage& img, int clip_top, int clip_bottom)
      : img_(img), top_(clip_top), bottom_(clip_bottom) {}

  void Fill(int x, int y, int w, int h, uint8_t v) {
    const int x0 = std::max(x, 0);
    const int x1 = std::min(x + w, img_.width);
    const int y0 = std::max(y, top_);
    const int y1 = std::min(y + h, bottom_);
    if (x0 >= x1) return;
    for (int r = y0; r < y1; ++r) {
      std::memset(&img_.pixels[static_cast<size_t>(r) * img_.width + x0], v,
                  static_cast<size_t>(x1 - x0));
    }
  }

  void Frame(int x, int y, int w, int h, uint8_t v) {
    Fill(x, y, w, 2, v);
    Fill(x, y + h - 2, w, 2, v);
    Fill(x, y, 2, h, v);
    Fill(x + w - 2, y, 2, h, v);
  }

  // Fingerprint block: 6 px segments whose gray levels come from a hash
  // chain seeded by the string, so any change repaints the whole block.
  void Glyphs(int x, int y, int w, int h, std::string_view text) {
    if (text.empty() || w <= 0 || h <= 0) return;
    std::vector<uint8_t> row(static_cast<size_t>(w));
    uint64_t state = Fnv1a64(text);
    for (int sx = 0; sx < w; sx += 6) {
      state = Mix(state + static_cast<uint64_t>(sx));
      const auto v = static_cast<uint8_t>(16 + (state & 0xff) % 145);
      std::memset(&row[static_cast<size_t>(sx)], v, static_cast<size_t>(std::min(6, w - sx)));
    }
    Blit(x, y, h, row);
  }

  // Full-widget stripe pattern keyed by a value (images, zoom levels, ...).
  void Stripes(int x, int y, int w, int h, std::string_view value) {
    if (w <= 0 || h <= 0) return;
    const uint64_t hv = Mix(Fnv1a64(value));
    const int period = 4 + static_cast<int>(hv % 5) * 2;
    const auto light = static_cast<uint8_t>(150 + (hv >> 8) % 90);
    const auto dark = static_cast<uint8_t>(10 + (hv >> 16) % 90);
    std::vector<uint8_t> row(static_cast<size_t>(w));
    for (int sx = 0; sx < w; ++sx) row[static_cast<size_t>(sx)] = sx % period < period / 2 ? dark : light;
    Blit(x, y, h, row);
  }

  // Halves every pixel in the clip band, eight at a time.
  void Dim() {
    uint8_t* p = &img_.pixels[static_cast<size_t>(top_) * img_.width];
    const size_t n = static_cast<size_t>(bottom_ - top_) * img_.width;
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
      uint64_t v;
      std::memcpy(&v, p + i, 8);
      v = (v >> 1) & 0x7f7f7f7f7f7f7f7fULL;
      std::memcpy(p + i, &v, 8);
    }
    for (; i < n; ++i) p[i] = static_cast<uint8_t>(p[i] >> 1);
  }

 private:
  // Copies `row` into rows [y, y+h) starting at column x, clipped.
  void Blit(int x, int y, int h, const std::vector<uint8_t>& row) {
    const int w = static_cast<int>(row.size());
    const int x0 = std::max(x, 0);
    const int x1 = std::min(x + w, img_.width);
    const int y0 = std::max(y, top_);
    const int y1 = std::min(y + h, bottom_);
    if (x0 >= x1) return;
    for (int r = y0; r < y1; ++r) {
      std::memcpy(&img_.pixels[static_cast<size_t>(r) * img_.width + x0], &row[static_cast<size_t>(x0 - x)],
                  static_cast<size_t>(x1 - x0));
    }
  }

  GrayImage& img_;
  int top_;
  int bottom_;
};

class Painter {
 public:
  Painter(const ConcreteState& st, Canvas& canvas, int content_top)
      : st_(st), canvas_(canvas), content_top_(content_top) {}

  void Draw(const WidgetSpec& w, bool in_dialog, int y_shift) {
    if (st_.Removed(w) || !st_.SelfShown(w, in_dialog)) return;
    const int x = w.x;
    const int y = content_top_ + w.y - y_shift;
    switch (w.kind) {
      case WidgetKind::kButton:
        canvas_.Fill(x, y, w.width, w.height, 184);
        canvas_.Frame(x, y, w.width, w.height, 120);
        break;
      case WidgetKind::kLabel:
        break;
      case WidgetKind::kEditText:
        canvas_.Fill(x, y, w.width, w.height, 255);
        canvas_.Fill(x, y + w.height - 3, w.width, 3, 96);
        break;
      case WidgetKind::kCheckBox: {
        const int box = std::min({w.height - 8, 40, w.width});
        canvas_.Frame(x + 4, y + (w.height - box) / 2, box, box, 40);
        if (st_.CheckedOf(w)) {
          canvas_.Fill(x + 8, y + (w.height - box) / 2 + 4, box - 8, box - 8, 24);
        }
        break;
      }
      case WidgetKind::kDialog:
        canvas_.Fill(x, y, w.width, w.height, 250);
        canvas_.Frame(x, y, w.width, w.height, 56);
        break;
      case WidgetKind::kList:
        canvas_.Fill(x, y, w.width, w.height, 224);
        break;
      case WidgetKind::kContainer:
        break;
    }
    if (!w.render_var.empty()) {
      canvas_.Stripes(x, y, w.width, w.height, st_.Var(w.render_var));
    }
    const std::string text = st_.TextOf(w);
    if (!text.empty()) {
      const int inset = w.kind == WidgetKind::kCheckBox ? std::min(w.height, 48) : 4;
      const int gh = std::max(4, w.height / 2);
      canvas_.Glyphs(x + inset, y + (w.height - gh) / 2, w.width - inset - 4, gh, text);
    }
    for (const auto& c : w.children) {
      if (c.kind != WidgetKind::kDialog) Draw(c, in_dialog, y_shift);
    }
  }

 private:
  const ConcreteState& st_;
  Canvas& canvas_;
  int content_top_;
};

}  // namespace

GrayImage Render(const ConcreteState& st, uint64_t frame) {
  GrayImage img;
  Render(st, frame, img);
  return img;
}

void Render(const ConcreteState& st, uint64_t frame, GrayImage& img) {
  const ScreenSpec& screen = st.app->screen;
  img.width = screen.width;
  img.height = screen.height;
  img.pixels.assign(static_cast<size_t>(img.width) * img.height, kBackgroundGray);
  const int header = screen.HeaderHeight();
  const int footer_top = screen.height - screen.FooterHeight();

  Canvas bands(img, 0, screen.height);
  bands.Fill(0, 0, screen.width, header, kHeaderGray);
  bands.Fill(0, footer_top, screen.width, screen.FooterHeight(), kFooterGray);
  // Status bar: clock-like frame counter plus an orientation marker.
  const int status_w = std::min(screen.width / 3, 240);
  bands.Glyphs(screen.width - status_w - 8, header / 4, status_w, std::max(1, header / 2),
               std::to_string(frame));
  bands.Fill(8, header / 4, 16, std::max(1, header / 2),
             st.orientation == Orientation::kPortrait ? 200 : 120);

  Canvas content(img, header, footer_top);
  Painter painter(st, content, header);
  const int page_shift = st.activity.scroll_offset * screen.PageHeight();
  painter.Draw(st.spec->root, false, page_shift);
  for (const auto& d : st.activity.dialog_stack) {
    const WidgetSpec* w = FindWidget(st.spec->root, d);
    if (!w) continue;
    content.Dim();
    painter.Draw(*w, true, 0);
  }
}

}  // namespace lossprobe::sim
