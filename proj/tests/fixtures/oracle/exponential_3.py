def ways(i, total, items, target):
    if i == len(items):
        return 1 if total == target else 0
    return ways(i + 1, total, items, target) + ways(i + 1, total + items[i], items, target)


n, target = map(int, input().split())
items = list(map(int, input().split()))
print(ways(0, 0, items, target))
