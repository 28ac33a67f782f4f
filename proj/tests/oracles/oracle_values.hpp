// Generated by tests/oracles/gen_oracles.py. Do not edit.
#pragma once

#include <array>

namespace oracle {

// Lanczos couplings of the K=500, B=4, Gamma=0.25 star, C_0..C_51.
inline constexpr std::array<double, 52> kDesignCouplings = {0.7982834033975336, 2.3117093242879823, 2.067652582035967, 2.030389462991909, 2.0178102228004726, 2.012060605147837, 2.008951714951604, 2.0070776919537674, 2.005857586874883, 2.0050156303676476, 2.004407174278907, 2.0039503843301967, 2.0035961269677087, 2.003313450816477, 2.003082069656103, 2.002888237102255, 2.0027223700492294, 2.002577622082982, 2.002448996357107, 2.0023327767522923, 2.00222615318058, 2.0021269688307335, 2.00203354601761, 2.0019445638876796, 2.0018589710544834, 2.0017759222093505, 2.0016947314718645, 2.00161483761175, 2.0015357778107434, 2.0014571676491073, 2.0013786856844673, 2.0013000614569294, 2.0012210660772483, 2.0011415047813186, 2.001061210995119, 2.000980041569771, 2.000897872930293, 2.0008145979431644, 2.0007301233533488, 2.000644367675464, 2.0005572594493954, 2.0004687357901187, 2.0003787411763425, 2.000287226434068, 2.0001941478800216, 2.0000994665968546, 2.0000031478174445, 1.9999051603999203, 1.999805476378447, 1.999704070577547, 1.9996009202798537, 1.99949600493904};

// 52-mode lattice, z = 10: normalized port amplitude from |10> (re, im).
inline constexpr std::array<double, 4> kSingleAmplitudesZ10 = {0.7118344158880869, 2.9965140846475085e-16, -0.7023473245889573, -9.574910257367936e-16};

// 52-mode lattice, z = 10: post-selected two-photon probabilities over k.
inline constexpr std::array<double, 3> kTwoPhotonFrom20 = {0.25675323606817224, 0.49990999914912304, 0.24333676478270452};
inline constexpr std::array<double, 3> kTwoPhotonFrom11 = {0.24997749776206024, 0.5000450044758795, 0.24997749776206024};
inline constexpr std::array<double, 3> kTwoPhotonFrom02 = {0.24333676478270452, 0.49990999914912304, 0.25675323606817224};

// Anchor-site intensity of the 51-site design chain at z = 0.5, 5, 10.
inline constexpr std::array<double, 3> kAnchorIntensity = {0.8639679672225631, 0.08146591087855898, 0.006073872324921975};

// Master-equation two-photon block from |20><20| at z = 4 (row-major re, im).
inline constexpr std::array<double, 18> kLindbladBlock20Z4 = {0.40056382063033075, 0.0, -0.4314299805857625, 0.0, 0.2323372937867088, 0.0, -0.43142998058576265, 0.0, 0.46467458757341784, 0.0, -0.25024045853670496, 0.0, 0.2323372937867089, 0.0, -0.25024045853670507, 0.0, 0.13476159179625133, 0.0};

// Purity of the post-selected block from (|11><11| + |20><20|)/2 at z = 10.
inline constexpr double kMixPurityZ10 = 0.9999596432856477;

// First z (step 0.05) where dark-state fidelity falls back below 0.95, M = 25, 50, 75.
inline constexpr std::array<double, 3> kRevivalDrop = {13.100000000000001, 25.6, 38.1};

}  // namespace oracle
