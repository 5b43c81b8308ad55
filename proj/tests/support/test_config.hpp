// Copyright 2026 The protondlra Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace pdlra::test
{
inline std::string data_path(std::string const& name)
{
    return std::string(PDLRA_TEST_DATA_DIR) + "/" + name;
}
}  // namespace pdlra::test
