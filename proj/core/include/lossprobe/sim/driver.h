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

#ifndef LOSSPROBE_SIM_DRIVER_H_
#define LOSSPROBE_SIM_DRIVER_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lossprobe/model/event.h"
#include "lossprobe/oracles/property_tree.h"
#include "lossprobe/sim/app_instance.h"
#include "lossprobe/sim/image.h"

namespace lossprobe::sim {

// An input widget the data-loss-revealing action fills in.
struct FillTarget {
  std::string locator;
  bool checkable = false;  // check box (toggled) rather than text field
  bool checked = false;
  bool default_checked = false;
  std::string default_text;
};

// The seam between the explorer and an app under test. A device adapter
// would implement the same interface.
class Driver {
 public:
  virtual ~Driver() = default;

  // (Re)launches the app at its initial activity. Throws Error(kStartCrash).
  virtual void Load() = 0;

  virtual std::string CurrentActivity() const = 0;
  virtual std::vector<std::string> ActivityNames() const = 0;
  virtual std::vector<model::Event> EnabledEvents() const = 0;
  // Enabled text fields and check boxes of the current screen.
  virtual std::vector<FillTarget> FillTargets() const = 0;
  virtual StepResult Apply(const model::Event& event) = 0;
  virtual StepResult Rotate() = 0;

  virtual GrayImage Render() = 0;
  // Render() into caller-owned storage; drivers override to skip allocation.
  virtual void RenderInto(GrayImage& out) { out = Render(); }
  virtual oracles::PropertyTree DumpHierarchy() = 0;

  // Rows of status header / navigation footer the snapshot oracle crops.
  virtual int CropHeader() const = 0;
  virtual int CropFooter() const = 0;

  // Faults that took effect since the previous call. Only simulated drivers
  // know this; it is used for ground-truth attribution, never by oracles.
  virtual std::vector<std::string> TakeFiredFaults() { return {}; }
};

// Driver over an in-process AppInstance.
class SimDriver : public Driver {
 public:
  SimDriver(std::shared_ptr<const AppSpec> spec, uint64_t seed);

  void Load() override;
  std::string CurrentActivity() const override;
  std::vector<std::string> ActivityNames() const override;
  std::vector<model::Event> EnabledEvents() const override;
  std::vector<FillTarget> FillTargets() const override;
  StepResult Apply(const model::Event& event) override;
  StepResult Rotate() override;
  GrayImage Render() override;
  void RenderInto(GrayImage& out) override;
  oracles::PropertyTree DumpHierarchy() override;
  int CropHeader() const override { return spec_->screen.HeaderHeight(); }
  int CropFooter() const override { return spec_->screen.FooterHeight(); }
  std::vector<std::string> TakeFiredFaults() override;

  const AppInstance& instance() const { return *instance_; }
  const AppSpec& spec() const { return *spec_; }

 private:
  std::shared_ptr<const AppSpec> spec_;
  uint64_t seed_;
  std::optional<AppInstance> instance_;
  uint64_t frame_ = 0;
};

struct NoiseOptions {
  // Reads served from a still-recreating screen after each rotation.
  int recreation_lag = 0;
  // When > 0, a clock label whose text advances every `clock_period` reads
  // is overlaid on the content area.
  int clock_period = 0;
};

// Test double reproducing the two kinds of spurious oracle failures:
// observations taken while the activity is still being recreated, and
// content that changes on its own. An observation is a Render() followed
// by a DumpHierarchy(); the lag and the clock advance per observation.
class NoisyDriver : public Driver {
 public:
  NoisyDriver(std::shared_ptr<const AppSpec> spec, uint64_t seed, NoiseOptions options);

  void Load() override;
  std::string CurrentActivity() const override { return inner_.CurrentActivity(); }
  std::vector<std::string> ActivityNames() const override { return inner_.ActivityNames(); }
  std::vector<model::Event> EnabledEvents() const override { return inner_.EnabledEvents(); }
  std::vector<FillTarget> FillTargets() const override { return inner_.FillTargets(); }
  StepResult Apply(const model::Event& event) override;
  StepResult Rotate() override;
  GrayImage Render() override;
  void RenderInto(GrayImage& out) override;
  oracles::PropertyTree DumpHierarchy() override;
  int CropHeader() const override { return inner_.CropHeader(); }
  int CropFooter() const override { return inner_.CropFooter(); }
  std::vector<std::string> TakeFiredFaults() override { return inner_.TakeFiredFaults(); }

  const SimDriver& inner() const { return inner_; }

 private:
  // State as seen mid-recreation: inflated layout, nothing restored yet,
  // and only the first widgets of the tree attached.
  ConcreteState Recreating(int step) const;
  bool Lagging() const { return pending_ > 0; }
  void Tick();

  SimDriver inner_;
  NoiseOptions options_;
  int pending_ = 0;
  int lag_step_ = 0;
  uint64_t reads_ = 0;
  uint64_t frame_ = 0;
};

}  // namespace lossprobe::sim

#endif  // LOSSPROBE_SIM_DRIVER_H_
