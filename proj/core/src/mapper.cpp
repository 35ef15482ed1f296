// SPDX-License-Identifier: Apache-2.0
//
// nfbeam: near-field MIMO beam alignment in the wavenumber domain
// Copyright (C) 2026 The nfbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nfbeam/mapper.hpp"
#include "nfbeam/error.hpp"

#include <cmath>
#include <string>

namespace nfbeam
{
    namespace
    {
        void check_same_shape(const std::vector<DenseLayer> &a, const std::vector<DenseLayer> &b, const char *what)
        {
            bool ok = a.size() == b.size();
            for (std::size_t i = 0; ok && i < a.size(); ++i)
            {
                ok = a[i].weight.rows() == b[i].weight.rows() && a[i].weight.cols() == b[i].weight.cols() &&
                     a[i].bias.size() == b[i].bias.size();
            }
            if (!ok)
                throw Error(ErrorKind::dimension, std::string(what) + " shape does not match the parameters");
        }

        std::vector<DenseLayer> zero_layers(const std::vector<DenseLayer> &like)
        {
            std::vector<DenseLayer> out;
            out.reserve(like.size());
            for (const auto &l : like)
                out.push_back({RMatrix::Zero(l.weight.rows(), l.weight.cols()), RVector::Zero(l.bias.size())});
            return out;
        }

        RVector split_complex(const CVector &v)
        {
            RVector x(2 * v.size());
            x.head(v.size()) = v.real();
            x.tail(v.size()) = v.imag();
            return x;
        }
    }

    std::size_t MapperParameters::parameter_count() const
    {
        std::size_t n = 0;
        for (const auto &l : layers)
            n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
        return n;
    }

    bool MapperParameters::all_finite() const
    {
        for (const auto &l : layers)
        {
            if (!l.weight.allFinite() || !l.bias.allFinite())
                return false;
        }
        return true;
    }

    MapperParameters MapperParameters::zeros_like() const
    {
        return MapperParameters{layer_dims, zero_layers(layers)};
    }

    OptimizerState OptimizerState::for_parameters(const MapperParameters &params, double learning_rate)
    {
        if (!(learning_rate > 0.0))
            throw Error(ErrorKind::argument, "learning rate must be positive");
        OptimizerState s;
        s.first_moment = zero_layers(params.layers);
        s.second_moment = zero_layers(params.layers);
        s.learning_rate = learning_rate;
        return s;
    }

    std::vector<int> mapper_layer_dims(Eigen::Index input_complex, Eigen::Index output_complex)
    {
        return {static_cast<int>(2 * input_complex), 128, 64, static_cast<int>(2 * output_complex)};
    }

    MapperParameters init_params(std::span<const int> layer_dims, Rng &rng)
    {
        if (layer_dims.size() < 2)
            throw Error(ErrorKind::argument, "a mapper needs at least an input and an output layer");
        for (int d : layer_dims)
        {
            if (d <= 0)
                throw Error(ErrorKind::argument, "layer widths must be positive");
        }
        if (layer_dims.front() % 2 != 0 || layer_dims.back() % 2 != 0)
            throw Error(ErrorKind::argument, "input and output widths must be even ([Re; Im] pairs)");

        MapperParameters p;
        p.layer_dims.assign(layer_dims.begin(), layer_dims.end());
        for (std::size_t i = 0; i + 1 < layer_dims.size(); ++i)
        {
            const int fan_in = layer_dims[i];
            const int fan_out = layer_dims[i + 1];
            const double a = 1.0 / std::sqrt(static_cast<double>(fan_in));
            std::uniform_real_distribution<double> u(-a, a);
            DenseLayer l{RMatrix(fan_out, fan_in), RVector::Zero(fan_out)};
            for (int r = 0; r < fan_out; ++r)
            {
                for (int c = 0; c < fan_in; ++c)
                    l.weight(r, c) = u(rng);
            }
            p.layers.push_back(std::move(l));
        }
        return p;
    }

    ForwardPass forward_pass(const MapperParameters &params, const CVector &input)
    {
        if (input.size() != params.input_size())
            throw Error(ErrorKind::dimension, "mapper expects " + std::to_string(params.input_size()) +
                                                  " complex inputs, got " + std::to_string(input.size()));
        ForwardPass pass;
        pass.activations.reserve(params.layers.size());
        pass.activations.push_back(split_complex(input));
        for (std::size_t i = 0; i < params.layers.size(); ++i)
        {
            const auto &l = params.layers[i];
            RVector z = l.weight * pass.activations.back() + l.bias;
            if (i + 1 == params.layers.size())
                pass.output = std::move(z);
            else
                pass.activations.push_back(z.cwiseMax(0.0));
        }
        return pass;
    }

    CVector forward(const MapperParameters &params, const CVector &input)
    {
        const RVector out = forward_pass(params, input).output;
        const Eigen::Index g = params.output_size();
        CVector z(g);
        z.real() = out.head(g);
        z.imag() = out.tail(g);
        return z;
    }

    BeamMap BeamMap::identity(Eigen::Index size)
    {
        BeamMap m;
        m.kind_ = Kind::identity;
        m.size_ = size;
        return m;
    }

    BeamMap BeamMap::bs(const TransformOperator &transform)
    {
        return from_matrix(transform.matrix, false);
    }

    BeamMap BeamMap::ue(const TransformOperator &transform)
    {
        return from_matrix(transform.matrix, true);
    }

    BeamMap BeamMap::from_matrix(const CMatrix &matrix, bool conjugate)
    {
        BeamMap m;
        m.kind_ = conjugate ? Kind::conjugate_transform : Kind::transform;
        m.matrix_ = conjugate ? CMatrix(matrix.conjugate()) : matrix;
        m.size_ = matrix.cols();
        return m;
    }

    Eigen::Index BeamMap::input_size() const
    {
        return size_;
    }

    Eigen::Index BeamMap::antenna_count() const
    {
        return kind_ == Kind::identity ? size_ : matrix_.rows();
    }

    CVector BeamMap::apply(const CVector &z) const
    {
        if (z.size() != size_)
            throw Error(ErrorKind::dimension, "beam map expects " + std::to_string(size_) + " entries");
        if (kind_ == Kind::identity)
            return z;
        return matrix_ * z;
    }

    CVector BeamMap::adjoint(const CVector &g) const
    {
        if (kind_ == Kind::identity)
            return g;
        return matrix_.adjoint() * g;
    }

    LossGradient loss_and_gradient(const MapperParameters &params, const CVector &received, const BeamMap &map)
    {
        if (params.output_size() != map.input_size())
            throw Error(ErrorKind::dimension, "mapper output size does not match the beam map");
        if (received.size() != map.antenna_count())
            throw Error(ErrorKind::dimension, "received vector length " + std::to_string(received.size()) +
                                                  " does not match " + std::to_string(map.antenna_count()) +
                                                  " antennas");

        const ForwardPass pass = forward_pass(params, received);
        const Eigen::Index g_out = params.output_size();
        CVector z(g_out);
        z.real() = pass.output.head(g_out);
        z.imag() = pass.output.tail(g_out);
        const CVector v = map.apply(z);

        const Eigen::Index k = v.size();
        const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
        CVector u(k);
        RVector modulus(k);
        for (Eigen::Index i = 0; i < k; ++i)
        {
            modulus(i) = std::abs(v(i));
            u(i) = modulus(i) < kModulusFloor ? Complex(1.0, 0.0) : v(i) / modulus(i);
        }
        const Complex s = (u.array() * received.array()).sum();
        const double s_abs = std::abs(s);

        LossGradient out;
        out.loss = s_abs * inv_sqrt_k;
        out.beam = u * inv_sqrt_k;
        out.gradient = params.zeros_like();
        if (s_abs == 0.0)
            return out;

        // dL = sum_i Re(conj(g_i) dv_i)
        const Complex phase = std::conj(s) / s_abs;
        const Complex j(0.0, 1.0);
        CVector g(k);
        for (Eigen::Index i = 0; i < k; ++i)
        {
            if (modulus(i) < kModulusFloor)
            {
                g(i) = 0.0;
                continue;
            }
            const double weight = std::real(phase * received(i) * j * u(i)) / modulus(i);
            g(i) = inv_sqrt_k * weight * j * u(i);
        }
        const CVector gz = map.adjoint(g);

        RVector delta(2 * g_out);
        delta.head(g_out) = gz.real();
        delta.tail(g_out) = gz.imag();

        for (std::size_t i = params.layers.size(); i-- > 0;)
        {
            const RVector &a = pass.activations[i];
            out.gradient.layers[i].weight.noalias() = delta * a.transpose();
            out.gradient.layers[i].bias = delta;
            if (i == 0)
                break;
            RVector back = params.layers[i].weight.transpose() * delta;
            delta = (a.array() > 0.0).select(back, 0.0);
        }
        return out;
    }

    void ascent_step(MapperParameters &params, OptimizerState &state, const MapperParameters &gradient)
    {
        check_same_shape(params.layers, gradient.layers, "gradient");
        check_same_shape(params.layers, state.first_moment, "first moment");
        check_same_shape(params.layers, state.second_moment, "second moment");

        state.step_count += 1;
        const double t = static_cast<double>(state.step_count);
        const double c1 = 1.0 - std::pow(state.beta1, t);
        const double c2 = 1.0 - std::pow(state.beta2, t);

        auto update = [&](auto &theta, auto &m, auto &v, const auto &g) {
            m = state.beta1 * m + (1.0 - state.beta1) * g;
            v = state.beta2 * v + (1.0 - state.beta2) * g.cwiseAbs2();
            theta.array() += state.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + state.epsilon);
        };
        for (std::size_t i = 0; i < params.layers.size(); ++i)
        {
            update(params.layers[i].weight, state.first_moment[i].weight, state.second_moment[i].weight,
                   gradient.layers[i].weight);
            update(params.layers[i].bias, state.first_moment[i].bias, state.second_moment[i].bias,
                   gradient.layers[i].bias);
        }
    }
}
