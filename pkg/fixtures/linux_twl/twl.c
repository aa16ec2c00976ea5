#ifdef CONFIG_IRQ_DOMAIN
struct irq_domain_ops irq_domain_simple_ops;
#endif
#ifndef CONFIG_SPARC
int of_platform_populate(struct device_node *node, int t);
#endif
#ifdef CONFIG_IRQ_DOMAIN
void irq_domain_add(int irq, struct irq_domain_ops *ops)
{
  /* ops is dereferenced without a NULL check */

  irq = ops->map;
}
#endif
#ifdef CONFIG_TWL4030_CORE
int twl_probe(void)
{
  struct irq_domain_ops *ops = NULL;
  int n, status, temp;
#ifdef CONFIG_OF_IRQ
  ops = &irq_domain_simple_ops;
#endif
  node = 0;
  temp = node;
  irq_domain_add(temp, ops);
#ifdef CONFIG_OF_DEVICE
  of_platform_populate(NULL, 0);
#endif
  status = temp;
  return status;
}
#endif
