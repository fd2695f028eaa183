"""
Quick verification script to test weighted KNN setup.

Run this to verify:
1. Builtin datasets load correctly
2. All modules import successfully
3. Basic functionality works
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

def test_data_loading():
    """Test data loading."""
    print("=" * 60)
    print("TEST 1: Data Loading")
    print("=" * 60)

    try:
        from datasets import load_builtin, synthetic_gene_like, synthetic_two_class

        iris = load_builtin('iris')
        cancer = load_builtin('breast_cancer')
        print(f"[OK] Loaded {iris}")
        print(f"[OK] Loaded {cancer}")
        print(f"  Iris class counts: {iris.class_counts().tolist()}")
        print(f"  Iris dimensions: {', '.join(iris.dimension_names)}")

        two_class = synthetic_two_class()
        gene_like = synthetic_gene_like()
        print(f"[OK] Generated {two_class}")
        print(f"[OK] Generated {gene_like}")

        return True

    except Exception as e:
        print(f"[ERROR] Error: {e}")
        return False


def test_distances():
    """Test the distance family."""
    print("\n" + "=" * 60)
    print("TEST 2: Weighted Minkowski Distance")
    print("=" * 60)

    try:
        from metric import MetricSpec, Norm, WeightVector, minkowski_distance, weighted_minkowski_distance

        for norm in [Norm(1), Norm(2), Norm(3), Norm.infinite()]:
            d = minkowski_distance([1, 2], [4, 6], norm)
            print(f"[OK] p={norm.label:<4} d((1,2), (4,6)) = {d:.6f}")

        spec = MetricSpec(Norm(2), WeightVector([1.5, 0.5]))
        d = weighted_minkowski_distance([0, 0], [1, 1], spec)
        print(f"[OK] {spec.describe()}: d((0,0), (1,1)) = {d:.6f}")

        return True

    except Exception as e:
        print(f"[ERROR] Error: {e}")
        return False


def test_weighting():
    """Test fitness and weights."""
    print("\n" + "=" * 60)
    print("TEST 3: Fitness Weighting")
    print("=" * 60)

    try:
        from datasets import load_builtin
        from weighting import fitness_report

        table = fitness_report(load_builtin('iris'), 0.0)
        for _, row in table.iterrows():
            print(f"  {row['name']:<20} lambda={row['lambda']:.4f}  w={row['weight']:.4f}")
        print(f"[OK] Weights sum to {table['weight'].sum():.6f}")

        return True

    except Exception as e:
        print(f"[ERROR] Error: {e}")
        return False


def test_classifier():
    """Test the KNN classifier."""
    print("\n" + "=" * 60)
    print("TEST 4: Weighted KNN")
    print("=" * 60)

    try:
        from datasets import load_builtin
        from classifier import fit, predict

        iris = load_builtin('iris')
        model = fit(iris, 5)
        prediction = predict(model, iris.features[0])
        print(f"[OK] Predicted {prediction.label_name} for sample 0 "
              f"(true: {iris.label_names()[0]})")
        print(f"  Neighbors: {list(prediction.neighbor_indices)}")
        print(f"  Votes: {list(prediction.votes)}")

        return True

    except Exception as e:
        print(f"[ERROR]Error: {e}")
        import traceback
        traceback.print_exc()
        return False


def test_cross_validation():
    """Test the evaluation grid."""
    print("\n" + "=" * 60)
    print("TEST 5: Cross-Validation")
    print("=" * 60)

    try:
        from datasets import load_builtin
        from evaluation import ExperimentSpec, cross_validate, format_table
        import time

        iris = load_builtin('iris')
        start = time.time()
        report = cross_validate(ExperimentSpec(dataset_id='iris'), iris)
        runtime = (time.time() - start) * 1000
        print(format_table(report))
        print(f"[OK]Grid finished in {runtime:.1f}ms")

        return True

    except Exception as e:
        print(f"[ERROR]Error: {e}")
        import traceback
        traceback.print_exc()
        return False


def main():
    """Run all tests."""
    print("\n" + "#" * 60)
    print("# WEIGHTED KNN SETUP VERIFICATION")
    print("#" * 60 + "\n")

    tests = [
        test_data_loading,
        test_distances,
        test_weighting,
        test_classifier,
        test_cross_validation
    ]

    results = []
    for test in tests:
        result = test()
        results.append(result)

    # Summary
    print("\n" + "=" * 60)
    print("SUMMARY")
    print("=" * 60)
    passed = sum(results)
    total = len(results)
    print(f"Tests Passed: {passed}/{total}")

    if passed == total:
        print("\n[OK]All tests passed! Setup is complete.")
        print("[OK]Run 'python experiments/run_experiments.py' to execute full experiments")
    else:
        print("\n[ERROR]Some tests failed. Please check the errors above.")

    return passed == total


if __name__ == '__main__':
    success = main()
    sys.exit(0 if success else 1)
